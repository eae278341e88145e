#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "framelab/chain.hpp"
#include "framelab/coupling.hpp"
#include "framelab/dispersion.hpp"
#include "framelab/errors.hpp"
#include "framelab/front.hpp"
#include "framelab/history.hpp"
#include "framelab/schedule.hpp"

using framelab::ConfigError;
using framelab::InsufficientSignalError;
using framelab::substrate::ChainHistory;
using framelab::substrate::ChainState;
using framelab::substrate::CouplingProfile;
using framelab::substrate::single_hop;
using namespace framelab::propagation;

TEST_SUITE("propagation") {

TEST_CASE("dispersion relation at hand-computed points") {
  const CouplingProfile unit = single_hop(1);
  CHECK(omega(0.0, unit) == 0.0);
  // omega(pi) = 2*sqrt(kappa/m)*|sin(pi/2)| = 2.
  CHECK(omega(M_PI, unit) == doctest::Approx(2.0).epsilon(1e-12));
  // A hop of 2 halves the period in k: omega(pi/2) already reaches 2.
  CHECK(omega(M_PI / 2.0, single_hop(2)) == doctest::Approx(2.0).epsilon(1e-12));
  // Mass 4 halves every frequency.
  CHECK(omega(M_PI, single_hop(1, 1.0, 4.0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("group velocity matches a finite-difference slope of omega") {
  const CouplingProfile profile({{1, 1.0}, {2, 0.25}});
  const double h = 1e-6;
  for (double k : {0.3, 1.0, 2.2}) {
    const double fd = (omega(k + h, profile) - omega(k - h, profile)) / (2.0 * h);
    CHECK(group_velocity(k, profile) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("long-wavelength speed is the stiffness-weighted hop quadrature") {
  for (int d = 1; d <= 6; ++d)
    CHECK(long_wavelength_speed(single_hop(d)) == static_cast<double>(d));
  CHECK(long_wavelength_speed(CouplingProfile({{1, 1.0}, {2, 0.25}})) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  // Spacing scales the speed linearly; mass by an inverse square root.
  CHECK(long_wavelength_speed(single_hop(1, 1.0, 1.0, 3.0)) == 3.0);
  CHECK(long_wavelength_speed(single_hop(1, 1.0, 4.0)) == 0.5);
}

TEST_CASE("max signal speed of a single-hop chain is exactly the hop distance") {
  for (int d = 1; d <= 6; ++d) CHECK(max_signal_speed(single_hop(d)) == static_cast<double>(d));
}

TEST_CASE("max signal speed agrees with a brute-force grid scan") {
  const CouplingProfile profile({{1, 1.0}, {2, 0.25}});
  double brute = 0.0;
  const int n = 200001;
  for (int i = 0; i < n; ++i)
    brute = std::max(brute, group_velocity(M_PI * i / (n - 1), profile));
  const double speed = max_signal_speed(profile);
  CHECK(speed == doctest::Approx(brute).epsilon(1e-6));
  CHECK(speed > 1.0);
  CHECK(speed < 2.0);
}

TEST_CASE("max angular frequency of the unit chain is 2") {
  CHECK(max_angular_frequency(single_hop(1)) == doctest::Approx(2.0).epsilon(1e-12));
  // Two incommensurate hops: bounded by 2*sqrt(sum kappa / m).
  const CouplingProfile profile({{1, 1.0}, {2, 1.0}});
  CHECK(max_angular_frequency(profile) <= 2.0 * std::sqrt(2.0) + 1e-12);
  CHECK(max_angular_frequency(profile) > 2.0);
}

TEST_CASE("an irrational stiffness ratio leaves the integer speed ladder") {
  const CouplingProfile two_hop({{1, 1.0}, {2, 1.0 / std::sqrt(2.0)}});
  const double ratio = max_signal_speed(two_hop) / max_signal_speed(single_hop(1));
  CHECK(std::abs(ratio - std::round(ratio)) > 1e-3);
}

TEST_CASE("dispersion sampling covers [0, pi/a] inclusively") {
  const DispersionCurve curve = sample_dispersion(single_hop(1), 5);
  REQUIRE(curve.k.size() == 5);
  CHECK(curve.k.front() == 0.0);
  CHECK(curve.k.back() == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(curve.omega.front() == 0.0);
  CHECK(curve.vg.front() == 1.0);  // k -> 0 limit
  CHECK_THROWS_AS(sample_dispersion(single_hop(1), 1), ConfigError);

  std::ostringstream out;
  write_csv(curve, out);
  CHECK(out.str().substr(0, 11) == "k,omega,vg\n");
}

TEST_CASE("synchronization schedules reproduce the reference patterns") {
  using Entry = std::pair<std::int64_t, std::size_t>;
  const std::vector<std::vector<Entry>> expected = {
      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}},
      {{0, 1}, {1, 3}, {2, 5}, {3, 7}},
      {{0, 1}, {1, 4}, {2, 7}},
      {{0, 1}, {1, 5}},
      {{0, 1}, {1, 6}},
      {{0, 1}, {1, 7}},
  };
  for (int c = 1; c <= 6; ++c) {
    const ExcitationSchedule schedule = table1_schedule(c, 7, 10000);
    const auto& want = expected[static_cast<std::size_t>(c - 1)];
    REQUIRE(schedule.entries.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(schedule.entries[i].tick == want[i].first);
      CHECK(schedule.entries[i].site == want[i].second);
    }
    CHECK(schedule.speed_multiplier == c);
  }
}

TEST_CASE("schedule generation validates and truncates") {
  CHECK_THROWS_AS(table1_schedule(0, 7, 100), ConfigError);
  CHECK_THROWS_AS(table1_schedule(-1, 7, 100), ConfigError);
  CHECK_THROWS_AS(table1_schedule(1, 0, 100), ConfigError);
  CHECK_THROWS_AS(table1_schedule(1, 7, -1), ConfigError);

  // Faster than the array is long: only the seed excitation fires.
  const ExcitationSchedule lone = table1_schedule(7, 7, 100);
  REQUIRE(lone.entries.size() == 1);
  CHECK(lone.entries[0].tick == 0);
  CHECK(lone.entries[0].site == 1);

  // max_tick truncates an otherwise longer pattern.
  CHECK(table1_schedule(1, 7, 2).entries.size() == 3);
}

TEST_CASE("schedule CSV is byte-stable") {
  std::ostringstream out;
  write_csv(table1_schedule(3, 7, 10), out);
  CHECK(out.str() == "tick,site\n0,1\n1,4\n2,7\n");
}

TEST_CASE("driving an empty schedule leaves the chain quiescent") {
  ExcitationSchedule schedule;
  schedule.entries = {};
  const ChainHistory history = drive(ChainState(32, single_hop(1)), schedule, 1.0, 0.01, 100, 5);
  REQUIRE(history.frames() == 5);  // one frame per tick, first at time zero
  REQUIRE(history.sites() == 32);
  for (const auto& frame : history.u)
    for (double u : frame) CHECK(u == 0.0);
}

TEST_CASE("drive reproduces a manual kick-then-integrate sequence exactly") {
  ExcitationSchedule schedule;
  schedule.entries = {{0, 5}};  // 1-based site 5
  const ChainHistory history = drive(ChainState(16, single_hop(1)), schedule, 0.3, 0.01, 100, 2);

  ChainState manual(16, single_hop(1));
  manual.kick(4, 0.3);  // same site, 0-based
  for (int i = 0; i < 100; ++i) manual.step(0.01);

  REQUIRE(history.frames() == 2);
  for (std::size_t i = 0; i < 16; ++i) {
    CHECK(history.u[1][i] == manual.displacements()[i]);
    CHECK(history.v[1][i] == manual.velocities()[i]);
  }
}

TEST_CASE("drive validates its timing and sites") {
  ExcitationSchedule schedule;
  schedule.entries = {{0, 1}};
  ChainState chain(16, single_hop(1));
  // dt * ticks_per_unit must equal the tick duration.
  CHECK_THROWS_AS(drive(ChainState(chain), schedule, 1.0, 0.01, 99, 2), ConfigError);
  CHECK_THROWS_AS(drive(ChainState(chain), schedule, 1.0, 0.01, 0, 2), ConfigError);

  ExcitationSchedule bad_site;
  bad_site.entries = {{0, 17}};
  CHECK_THROWS_AS(drive(ChainState(chain), bad_site, 1.0, 0.01, 100, 2), ConfigError);
  ExcitationSchedule zero_site;
  zero_site.entries = {{0, 0}};
  CHECK_THROWS_AS(drive(ChainState(chain), zero_site, 1.0, 0.01, 100, 2), ConfigError);

  ExcitationSchedule unsorted;
  unsorted.entries = {{2, 1}, {1, 2}};
  CHECK_THROWS_AS(drive(ChainState(chain), unsorted, 1.0, 0.01, 100, 2), ConfigError);
}

TEST_CASE("front fit recovers the unit chain speed within 5 percent") {
  ExcitationSchedule schedule;
  schedule.entries = {{0, 201}};
  const ChainHistory history =
      drive(ChainState(400, single_hop(1)), schedule, 1.0, 0.02, 50, 120);
  double peak = 0.0;
  for (const auto& frame : history.u)
    for (double u : frame) peak = std::max(peak, std::abs(u));
  const FrontFit fit = estimate_front_speed(history, 1e-3 * peak);
  CHECK(fit.speed == doctest::Approx(1.0).epsilon(0.05));
  CHECK(fit.source_site == 200);
  CHECK(fit.sites.size() >= 8);
  CHECK(fit.residual < 1.0);

  std::ostringstream out;
  write_csv(fit, out);
  CHECK(out.str().substr(0, 19) == "site,crossing_time\n");
}

TEST_CASE("a phase-matched schedule still reads back the chain's own speed") {
  // Excite along the c=2 pattern on a hop-2 chain: the kicks ride with the
  // front, and the fitted speed is the chain speed, 2.
  ExcitationSchedule schedule = table1_schedule(2, 7, 10);
  for (ScheduleEntry& entry : schedule.entries) entry.site += 400;  // center the pattern
  const ChainHistory history =
      drive(ChainState(800, single_hop(2)), schedule, 1.0, 0.02, 50, 130);
  double peak = 0.0;
  for (const auto& frame : history.u)
    for (double u : frame) peak = std::max(peak, std::abs(u));
  const FrontFit fit = estimate_front_speed(history, 1e-3 * peak);
  CHECK(fit.speed == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("a quiescent run has no front to fit") {
  ExcitationSchedule schedule;
  schedule.entries = {};
  const ChainHistory history = drive(ChainState(32, single_hop(1)), schedule, 1.0, 0.01, 100, 3);
  CHECK_THROWS_AS(estimate_front_speed(history, 1e-6), InsufficientSignalError);
  CHECK_THROWS_AS(estimate_front_speed(history, 0.0), ConfigError);
}

}  // TEST_SUITE
