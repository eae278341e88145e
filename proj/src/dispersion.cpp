#include "framelab/dispersion.hpp"

#include <cmath>
#include <ostream>

#include "framelab/csv.hpp"
#include "framelab/errors.hpp"

namespace framelab::propagation {

namespace {

constexpr int kGridPoints = 1024;
constexpr double kIntervalTol = 1e-9;

// Maximize f over [lo, hi]: coarse grid seed, then golden-section refinement
// of the interval bracketing the best grid point.  Returns the best value
// seen across all evaluations, so maxima sitting exactly on a grid point or
// an interval end are never lost to the bracketing.
template <typename F>
double maximize(F&& f, double lo, double hi) {
  double best = f(lo);
  int best_idx = 0;
  for (int i = 1; i < kGridPoints; ++i) {
    const double x = lo + (hi - lo) * i / (kGridPoints - 1);
    const double fx = f(x);
    if (fx > best) {
      best = fx;
      best_idx = i;
    }
  }
  double a = lo + (hi - lo) * std::max(best_idx - 1, 0) / (kGridPoints - 1);
  double b = lo + (hi - lo) * std::min(best_idx + 1, kGridPoints - 1) / (kGridPoints - 1);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > kIntervalTol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
      if (f2 > best) best = f2;
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
      if (f1 > best) best = f1;
    }
  }
  return best;
}

}  // namespace

double omega(double k, const substrate::CouplingProfile& profile) {
  double sum = 0.0;
  for (const substrate::Hop& hop : profile.hops()) {
    const double s = std::sin(0.5 * k * hop.distance * profile.spacing());
    sum += hop.stiffness * s * s;
  }
  return std::sqrt(4.0 * sum / profile.mass());
}

double long_wavelength_speed(const substrate::CouplingProfile& profile) {
  double sum = 0.0;
  for (const substrate::Hop& hop : profile.hops())
    sum += hop.stiffness * hop.distance * hop.distance;
  return profile.spacing() * std::sqrt(sum / profile.mass());
}

double group_velocity(double k, const substrate::CouplingProfile& profile) {
  const double w = omega(k, profile);
  // Near a zero of omega the ratio below is 0/0 noise: both sines are at
  // their own zeros, so their ~0.5-ulp rounding can push the computed ratio
  // a few 1e-16 relative ABOVE the exact limit (the long-wavelength speed),
  // which would break the exactness of single-hop maxima.  A window of
  // 1e-6 * (omega's own scale) returns the exact limit instead; the true
  // group velocity differs from it by only O(1e-12) relative there, while
  // every point outside the window sits far enough from the zero that the
  // computed ratio stays strictly below the supremum.
  double stiffness_sum = 0.0;
  for (const substrate::Hop& hop : profile.hops()) stiffness_sum += hop.stiffness;
  const double w_scale = 2.0 * std::sqrt(stiffness_sum / profile.mass());
  if (w <= 1e-6 * w_scale) return long_wavelength_speed(profile);
  double sum = 0.0;
  for (const substrate::Hop& hop : profile.hops())
    sum += hop.stiffness * hop.distance * std::sin(k * hop.distance * profile.spacing());
  return profile.spacing() * sum / (profile.mass() * w);
}

double max_angular_frequency(const substrate::CouplingProfile& profile) {
  const double k_edge = M_PI / profile.spacing();
  return maximize([&](double k) { return omega(k, profile); }, 0.0, k_edge);
}

double max_signal_speed(const substrate::CouplingProfile& profile) {
  const double k_edge = M_PI / profile.spacing();
  return maximize([&](double k) { return group_velocity(k, profile); }, 0.0, k_edge);
}

DispersionCurve sample_dispersion(const substrate::CouplingProfile& profile,
                                  std::size_t samples) {
  if (samples < 2) throw ConfigError("dispersion sampling needs at least 2 points");
  DispersionCurve curve{profile, {}, {}, {}};
  curve.k.reserve(samples);
  curve.omega.reserve(samples);
  curve.vg.reserve(samples);
  const double k_edge = M_PI / profile.spacing();
  for (std::size_t i = 0; i < samples; ++i) {
    const double k = k_edge * static_cast<double>(i) / static_cast<double>(samples - 1);
    curve.k.push_back(k);
    curve.omega.push_back(omega(k, profile));
    curve.vg.push_back(group_velocity(k, profile));
  }
  return curve;
}

void write_csv(const DispersionCurve& curve, std::ostream& out) {
  csv::Writer w(out);
  w.row("k", "omega", "vg");
  for (std::size_t i = 0; i < curve.k.size(); ++i)
    w.row(curve.k[i], curve.omega[i], curve.vg[i]);
}

}  // namespace framelab::propagation
