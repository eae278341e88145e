#include "framelab/chain.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "framelab/dispersion.hpp"
#include "framelab/errors.hpp"

namespace framelab::substrate {

namespace {

void check_length(std::size_t n, const CouplingProfile& profile) {
  // n > 2d+1: with n = 2d+1 the two bonds i -> i+d and i -> i-d join the
  // same pair of sites through the wrap, double-counting the spring.
  const std::size_t min_n = 2 * static_cast<std::size_t>(profile.max_hop_distance()) + 2;
  if (n < min_n)
    throw ConfigError("chain of " + std::to_string(n) + " sites is too short for hop distance " +
                      std::to_string(profile.max_hop_distance()) + " (need at least " +
                      std::to_string(min_n) + ")");
}

}  // namespace

ChainState::ChainState(std::size_t n, CouplingProfile profile)
    : profile_(std::move(profile)), u_(n, 0.0), v_(n, 0.0), accel_(n, 0.0), accel_new_(n, 0.0) {
  check_length(n, profile_);
  max_dt_ = 0.1 / propagation::max_angular_frequency(profile_);
}

ChainState::ChainState(std::vector<double> displacements, std::vector<double> velocities,
                       CouplingProfile profile, double time)
    : profile_(std::move(profile)),
      u_(std::move(displacements)),
      v_(std::move(velocities)),
      time_(time) {
  if (u_.size() != v_.size())
    throw ConfigError("displacement and velocity arrays must have equal length");
  check_length(u_.size(), profile_);
  accel_.assign(u_.size(), 0.0);
  accel_new_.assign(u_.size(), 0.0);
  compute_accelerations(accel_);
  max_dt_ = 0.1 / propagation::max_angular_frequency(profile_);
}

void ChainState::compute_accelerations(std::vector<double>& accel) const {
  const std::size_t n = u_.size();
  std::fill(accel.begin(), accel.end(), 0.0);
  // Per-bond assembly: each bond adds +f to one site and -f to the other,
  // so the force sum cancels term by term and momentum stays exact.
  for (const Hop& hop : profile_.hops()) {
    const auto d = static_cast<std::size_t>(hop.distance);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = i + d;
      if (j >= n) j -= n;
      const double f = hop.stiffness * (u_[j] - u_[i]);
      accel[i] += f;
      accel[j] -= f;
    }
  }
  const double inv_m = 1.0 / profile_.mass();
  for (double& a : accel) a *= inv_m;
}

void ChainState::step(double dt) {
  if (!(dt > 0.0)) throw StepSizeError("step size must be > 0");
  if (dt > max_dt_ * (1.0 + 1e-12))
    throw StepSizeError("step size " + std::to_string(dt) + " above stability guard " +
                        std::to_string(max_dt_));
  const std::size_t n = u_.size();
  const double half_dt = 0.5 * dt;
  for (std::size_t i = 0; i < n; ++i) u_[i] += dt * (v_[i] + half_dt * accel_[i]);
  compute_accelerations(accel_new_);
  for (std::size_t i = 0; i < n; ++i) v_[i] += half_dt * (accel_[i] + accel_new_[i]);
  accel_.swap(accel_new_);
  time_ += dt;
}

void ChainState::kick(std::size_t site, double impulse) {
  if (site >= u_.size()) throw ConfigError("excitation site out of range");
  v_[site] += impulse;
}

double ChainState::total_energy() const {
  const std::size_t n = u_.size();
  double kinetic = 0.0;
  for (double vi : v_) kinetic += vi * vi;
  kinetic *= 0.5 * profile_.mass();
  double potential = 0.0;
  for (const Hop& hop : profile_.hops()) {
    const auto d = static_cast<std::size_t>(hop.distance);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = i + d;
      if (j >= n) j -= n;
      const double stretch = u_[j] - u_[i];
      sum += stretch * stretch;
    }
    potential += 0.5 * hop.stiffness * sum;
  }
  return kinetic + potential;
}

double ChainState::total_momentum() const {
  double sum = 0.0;
  for (double vi : v_) sum += vi;
  return profile_.mass() * sum;
}

void ChainState::negate_velocities() {
  for (double& vi : v_) vi = -vi;
}

}  // namespace framelab::substrate
