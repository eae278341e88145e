#pragma once

#include <vector>

namespace framelab::substrate {

/// One multi-neighbor coupling: every oscillator i is bound to i +/- distance
/// by a linear spring of the given stiffness.
struct Hop {
  int distance;      // lattice units, > 0
  double stiffness;  // force per unit length, > 0
};

/// Coupling profile of an oscillator chain: the set of hops plus oscillator
/// mass and lattice spacing. Hops are kept sorted by distance; distances are
/// distinct and positive.
class CouplingProfile {
 public:
  CouplingProfile(std::vector<Hop> hops, double mass = 1.0, double spacing = 1.0);

  const std::vector<Hop>& hops() const { return hops_; }
  double mass() const { return mass_; }
  double spacing() const { return spacing_; }
  int max_hop_distance() const { return hops_.back().distance; }

 private:
  std::vector<Hop> hops_;
  double mass_;
  double spacing_;
};

/// Profile with a single hop at `distance`.
CouplingProfile single_hop(int distance, double stiffness = 1.0, double mass = 1.0,
                           double spacing = 1.0);

}  // namespace framelab::substrate
