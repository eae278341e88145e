#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "framelab/coupling.hpp"

namespace framelab::substrate {

/// Periodic chain of N coupled oscillators advanced by velocity Verlet.
///
/// The state is a plain value: copy it to fork a run, move it between
/// threads. Each instance is advanced by one logical thread at a time.
class ChainState {
 public:
  /// All displacements and velocities zero, time zero.
  /// Requires n > 2 * max hop distance + 1 so the periodic wrap is sound.
  ChainState(std::size_t n, CouplingProfile profile);

  /// Explicit initial condition, same size requirement.
  ChainState(std::vector<double> displacements, std::vector<double> velocities,
             CouplingProfile profile, double time = 0.0);

  /// One velocity-Verlet step. dt must lie in (0, max_stable_dt()].
  void step(double dt);

  /// Velocity impulse at one site; everything else unchanged.
  void kick(std::size_t site, double impulse);

  /// Kinetic plus spring energy:
  ///   E = sum_i m v_i^2 / 2 + sum_i sum_d kappa_d (u_{i+d} - u_i)^2 / 2.
  double total_energy() const;

  /// sum_i m v_i; conserved under stepping (internal pair forces only).
  double total_momentum() const;

  /// Exact time reversal point: stepping the negated state retraces the
  /// trajectory.
  void negate_velocities();

  std::span<const double> displacements() const { return u_; }
  std::span<const double> velocities() const { return v_; }
  double time() const { return time_; }
  std::size_t size() const { return u_.size(); }
  const CouplingProfile& profile() const { return profile_; }

  /// Stability guard 0.1 / omega_max for this profile. Verlet needs
  /// dt * omega < 2; the factor-20 margin keeps the integrator in its
  /// accurate regime. Snapshot energy error still scales as
  /// (omega_max * dt)^2 / 8, so tight energy checks need dt well below
  /// the guard.
  double max_stable_dt() const { return max_dt_; }

 private:
  void compute_accelerations(std::vector<double>& accel) const;

  CouplingProfile profile_;
  std::vector<double> u_;
  std::vector<double> v_;
  std::vector<double> accel_;      // matches u_; maintained across steps
  std::vector<double> accel_new_;  // scratch
  double time_ = 0.0;
  double max_dt_ = 0.0;
};

}  // namespace framelab::substrate
