#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "framelab/coupling.hpp"

namespace framelab::propagation {

// Lattice dispersion relation of the coupled chain:
//   omega(k)^2 = (4/m) * sum_d kappa_d * sin^2(k*d*a/2)
// even in k and periodic with period 2*pi/a, so [0, pi/a] covers everything.
double omega(double k, const substrate::CouplingProfile& profile);

// d(omega)/dk = (a/(m*omega)) * sum_d kappa_d * d * sin(k*d*a).  Wherever
// omega vanishes (k = 0, and interior zone points when every hop distance
// shares a common factor) the two one-sided slopes are +-(long-wavelength
// speed); this returns the positive one.
double group_velocity(double k, const substrate::CouplingProfile& profile);

// k -> 0 limit of the group velocity: a * sqrt(sum_d kappa_d * d^2 / m).
double long_wavelength_speed(const substrate::CouplingProfile& profile);

// max over k in [0, pi/a] of omega(k); used by the chain stepper's
// stability guard.
double max_angular_frequency(const substrate::CouplingProfile& profile);

// max over k in [0, pi/a] of the group velocity, located by a 1024-point
// grid seed plus golden-section refinement of the bracketing interval down
// to width 1e-9.  Every evaluation (grid ends included) is tracked, so a
// boundary maximum such as the single-hop k=0 case is returned exactly.
double max_signal_speed(const substrate::CouplingProfile& profile);

struct DispersionCurve {
  substrate::CouplingProfile profile;
  std::vector<double> k;       // wavenumbers in [0, pi/a]
  std::vector<double> omega;   // angular frequency at each k
  std::vector<double> vg;      // group velocity at each k
};

// Uniform sampling of [0, pi/a] with `samples` points (endpoints included).
DispersionCurve sample_dispersion(const substrate::CouplingProfile& profile,
                                  std::size_t samples);

// CSV with header `k,omega,vg`, one row per sample.
void write_csv(const DispersionCurve& curve, std::ostream& out);

}  // namespace framelab::propagation
