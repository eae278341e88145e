#include "framelab/coupling.hpp"

#include <algorithm>
#include <cmath>

#include "framelab/errors.hpp"

namespace framelab::substrate {

CouplingProfile::CouplingProfile(std::vector<Hop> hops, double mass, double spacing)
    : hops_(std::move(hops)), mass_(mass), spacing_(spacing) {
  if (hops_.empty()) throw ConfigError("coupling profile needs at least one hop");
  for (const Hop& h : hops_) {
    if (h.distance <= 0) throw ConfigError("hop distance must be a positive integer");
    if (!(h.stiffness > 0.0) || !std::isfinite(h.stiffness))
      throw ConfigError("hop stiffness must be finite and > 0");
  }
  std::sort(hops_.begin(), hops_.end(),
            [](const Hop& a, const Hop& b) { return a.distance < b.distance; });
  for (std::size_t i = 1; i < hops_.size(); ++i)
    if (hops_[i].distance == hops_[i - 1].distance)
      throw ConfigError("hop distances must be distinct");
  if (!(mass_ > 0.0) || !std::isfinite(mass_)) throw ConfigError("mass must be finite and > 0");
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
    throw ConfigError("spacing must be finite and > 0");
}

CouplingProfile single_hop(int distance, double stiffness, double mass, double spacing) {
  return CouplingProfile({{distance, stiffness}}, mass, spacing);
}

}  // namespace framelab::substrate
