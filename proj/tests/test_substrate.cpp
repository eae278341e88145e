#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "framelab/cellular.hpp"
#include "framelab/chain.hpp"
#include "framelab/coupling.hpp"
#include "framelab/errors.hpp"
#include "framelab/rng.hpp"

using framelab::ConfigError;
using framelab::SplitMix64;
using framelab::StepSizeError;
using namespace framelab::substrate;

namespace {

std::vector<double> random_vector(std::size_t n, SplitMix64& rng, double lo, double hi) {
  std::vector<double> out(n);
  for (double& x : out) x = rng.next_in(lo, hi);
  return out;
}

}  // namespace

TEST_SUITE("substrate") {

TEST_CASE("coupling profile validates its parameters") {
  CHECK_THROWS_AS(CouplingProfile({}), ConfigError);
  CHECK_THROWS_AS(CouplingProfile({{0, 1.0}}), ConfigError);
  CHECK_THROWS_AS(CouplingProfile({{-2, 1.0}}), ConfigError);
  CHECK_THROWS_AS(CouplingProfile({{1, 0.0}}), ConfigError);
  CHECK_THROWS_AS(CouplingProfile({{1, -1.0}}), ConfigError);
  CHECK_THROWS_AS(CouplingProfile({{1, 1.0}, {1, 2.0}}), ConfigError);
  CHECK_THROWS_AS(CouplingProfile({{1, 1.0}}, 0.0), ConfigError);
  CHECK_THROWS_AS(CouplingProfile({{1, 1.0}}, 1.0, -1.0), ConfigError);

  const CouplingProfile profile({{3, 0.5}, {1, 2.0}});
  CHECK(profile.hops().size() == 2);
  CHECK(profile.hops()[0].distance == 1);  // kept sorted by distance
  CHECK(profile.hops()[1].distance == 3);
  CHECK(profile.max_hop_distance() == 3);
  CHECK(profile.mass() == 1.0);
  CHECK(profile.spacing() == 1.0);
}

TEST_CASE("chain needs enough sites for the longest hop") {
  // A ring of n sites with hop distance d couples i to i+d and i-d; for the
  // two neighbors to be distinct sites the ring needs n > 2d + 1.
  CHECK_THROWS_AS(ChainState(7, single_hop(3)), ConfigError);
  CHECK_NOTHROW(ChainState(8, single_hop(3)));
  CHECK_THROWS_AS(ChainState(3, single_hop(1)), ConfigError);
  CHECK_NOTHROW(ChainState(4, single_hop(1)));

  std::vector<double> u(5, 0.0);
  std::vector<double> v(4, 0.0);
  CHECK_THROWS_AS(ChainState(u, v, single_hop(1)), ConfigError);
}

TEST_CASE("the all-zero chain is a fixed point") {
  ChainState chain(16, single_hop(1));
  const double dt = chain.max_stable_dt();
  for (int i = 0; i < 100; ++i) chain.step(dt);
  for (double u : chain.displacements()) CHECK(u == 0.0);
  for (double v : chain.velocities()) CHECK(v == 0.0);
  CHECK(chain.total_energy() == 0.0);
  CHECK(chain.time() == doctest::Approx(100 * dt));
}

TEST_CASE("a single displaced site stores spring energy in its two bonds") {
  std::vector<double> u(10, 0.0);
  std::vector<double> v(10, 0.0);
  u[0] = 1.0;
  const ChainState chain(u, v, single_hop(1));
  // kappa/2 * (u1 - u0)^2 + kappa/2 * (u0 - u9)^2 = 1/2 + 1/2.
  CHECK(chain.total_energy() == 1.0);
}

TEST_CASE("a kick deposits exactly the impulse kinetic energy") {
  ChainState chain(12, single_hop(1));
  chain.kick(3, 0.7);
  CHECK(chain.total_energy() == 0.5 * 0.7 * 0.7);
  CHECK(chain.total_momentum() == 0.7);
  CHECK_THROWS_AS(chain.kick(12, 1.0), ConfigError);
}

TEST_CASE("step size is guarded") {
  ChainState chain(16, single_hop(1));
  CHECK_THROWS_AS(chain.step(0.0), StepSizeError);
  CHECK_THROWS_AS(chain.step(-0.1), StepSizeError);
  CHECK_THROWS_AS(chain.step(chain.max_stable_dt() * 1.01), StepSizeError);
  // omega_max = 2 for a unit nearest-neighbor chain, so the guard is 0.05.
  CHECK(chain.max_stable_dt() == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("energy drifts below 1e-6 over 1e4 steps at dt = guard/100") {
  SplitMix64 rng(2024);
  std::vector<double> u = random_vector(32, rng, -0.5, 0.5);
  std::vector<double> v = random_vector(32, rng, -0.5, 0.5);
  ChainState chain(u, v, CouplingProfile({{1, 1.0}, {2, 0.5}}));
  const double dt = chain.max_stable_dt() / 100.0;
  const double e0 = chain.total_energy();
  const double p0 = chain.total_momentum();
  for (int i = 0; i < 10000; ++i) chain.step(dt);
  CHECK(std::abs(chain.total_energy() - e0) / e0 < 1e-6);
  CHECK(std::abs(chain.total_momentum() - p0) < 1e-12);
}

TEST_CASE("velocity negation retraces the trajectory to 1e-8 RMS") {
  SplitMix64 rng(7);
  std::vector<double> u = random_vector(32, rng, -0.5, 0.5);
  std::vector<double> v = random_vector(32, rng, -0.5, 0.5);
  ChainState chain(u, v, CouplingProfile({{1, 1.0}, {3, 0.25}}));
  const double dt = chain.max_stable_dt() / 2.0;
  for (int i = 0; i < 2000; ++i) chain.step(dt);
  chain.negate_velocities();
  for (int i = 0; i < 2000; ++i) chain.step(dt);
  double sq = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = chain.displacements()[i] - u[i];
    sq += d * d;
  }
  CHECK(std::sqrt(sq / static_cast<double>(u.size())) <= 1e-8);
}

TEST_CASE("automaton construction is validated") {
  CHECK_THROWS_AS(CaState(9, 0, ca_rule_or()), ConfigError);
  CHECK_THROWS_AS(CaState(100, 32, ca_rule_or()), ConfigError);
  CHECK_THROWS_AS(CaState(6, 3, ca_rule_or()), ConfigError);  // n must exceed 2r
  CHECK_NOTHROW(CaState(7, 3, ca_rule_or()));
  CHECK_THROWS_AS(CaState(9, 1, CaRule{}), ConfigError);
  // A non-quiescent rule would spontaneously excite the vacuum.
  CHECK_THROWS_AS(CaState(9, 1, [](std::uint64_t w) { return w == 0; }), ConfigError);
  CHECK_THROWS_AS(CaState(9, 1, ca_rule_or(), std::vector<std::uint8_t>(4, 0)), ConfigError);
}

TEST_CASE("centered seed and support interval") {
  const std::vector<std::uint8_t> seed = centered_seed(9);
  CHECK(seed.size() == 9);
  for (std::size_t i = 0; i < seed.size(); ++i) CHECK(seed[i] == (i == 4 ? 1 : 0));

  CHECK(!support_interval(std::vector<std::uint8_t>(5, 0)).has_value());
  const auto support = support_interval({0, 1, 0, 1, 0});
  REQUIRE(support.has_value());
  CHECK(support->first == 1);
  CHECK(support->second == 3);
}

TEST_CASE("parity rule spreads a point seed to its full neighborhood") {
  CaState state(11, 1, ca_rule_parity(), centered_seed(11));
  state.step();
  // Exactly the three windows containing the seed cell have odd parity.
  const std::vector<std::uint8_t> expected = {0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0};
  CHECK(state.current() == expected);
  CHECK(state.previous() == centered_seed(11));
  CHECK(state.tick() == 1);
}

TEST_CASE("or rule widens the support by the radius each step") {
  const std::size_t n = 41;
  CaState state(n, 1, ca_rule_or(), centered_seed(n));
  state.step();
  const std::pair<std::size_t, std::size_t> none{999, 0};
  const auto s1 = support_interval(state.current()).value_or(none);
  CHECK(s1.second - s1.first == 2);
  state.step();
  const auto s2 = support_interval(state.current()).value_or(none);
  CHECK(s2.second - s2.first == 4);
}

TEST_CASE("excitations stay inside the radius-3 light cone") {
  const std::size_t n = 301;
  const std::size_t center = n / 2;
  CaState state(n, 3, ca_rule_or(), centered_seed(n));
  for (std::size_t t = 1; t <= 40; ++t) {
    state.step();
    const auto support = support_interval(state.current());
    REQUIRE(support.has_value());
    CHECK(support->first >= center - 3 * t);
    CHECK(support->second <= center + 3 * t);
  }
}

TEST_CASE("swap/step/swap undoes a step bit-for-bit, 1000 random states") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 64;
    std::vector<std::uint8_t> seed(n);
    for (auto& bit : seed) bit = rng.next() & 1;
    CaState state(n, 3, trial % 2 == 0 ? ca_rule_or() : ca_rule_parity(), seed);
    const std::size_t warmup = 1 + trial % 5;  // make the previous layer nontrivial
    for (std::size_t i = 0; i < warmup; ++i) state.step();
    const std::vector<std::uint8_t> c0 = state.current();
    const std::vector<std::uint8_t> p0 = state.previous();
    state.step();
    state.swap_layers();
    state.step();
    state.swap_layers();
    CHECK(state.current() == c0);
    CHECK(state.previous() == p0);
  }
}

TEST_CASE("the tick counter counts steps in either direction") {
  CaState state(9, 1, ca_rule_or(), centered_seed(9));
  state.step();
  state.swap_layers();
  state.step();
  state.swap_layers();
  CHECK(state.tick() == 2);
}

}  // TEST_SUITE
