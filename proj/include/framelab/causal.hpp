#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "framelab/event.hpp"

namespace framelab::causal {

// chronological: strict interior of the forward cone; causal: closed cone.
// Both demand strictly increasing time, so each relation is a strict
// partial order.
enum class RelationKind { chronological, causal };

struct CausalConfig {
  double c_s = 1.0;
  RelationKind kind = RelationKind::chronological;
};

bool precedes(const frames::Event& p, const frames::Event& q, const CausalConfig& cfg);

// Boost + shift-translation + positive dilation; the cone-preserving group.
struct SimilarityMap {
  double v = 0.0;  // boost velocity, |v| < the signal speed it is applied at
  double shift_t = 0.0;
  double shift_x = 0.0;
  double scale = 1.0;  // strictly positive
};

frames::Event apply_similarity(const SimilarityMap& m, const frames::Event& e, double c_s);

using EventMap = std::function<frames::Event(const frames::Event&)>;

// Quadratic cone-breaking probe map on (c_s*t, x) coordinates:
//   ct' = ct + amp_t * x^2,  x' = x + amp_x * (ct)^2.
EventMap quadratic_map(double amp_t, double amp_x, double c_s);

// One ordered pair whose relation changed under a map, with the relation of
// the pair in both directions before and after.
struct OrderViolation {
  frames::Event p;
  frames::Event q;
  bool before_pq = false;
  bool before_qp = false;
  bool after_pq = false;
  bool after_qp = false;
};

struct OrderCheck {
  bool preserved = true;
  std::vector<OrderViolation> violations;
};

// Tests precedes(p,q) <=> precedes(map p, map q) over every ordered pair of
// the given events (>= 2 required); returns all violating pairs.
OrderCheck preserves_order(const EventMap& map, const std::vector<frames::Event>& events,
                           const CausalConfig& cfg);

// Samples event pairs uniformly in the box |c_s*t| <= 1, |x| <= 1 until a
// pair violates order equivalence or n_trials are exhausted.  Deterministic
// given the seed.
std::optional<OrderViolation> find_violation(const EventMap& map, const CausalConfig& cfg,
                                             std::size_t n_trials, std::uint64_t seed);

}  // namespace framelab::causal
