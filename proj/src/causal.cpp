#include "framelab/causal.hpp"

#include <cmath>

#include "framelab/errors.hpp"
#include "framelab/frames.hpp"
#include "framelab/rng.hpp"

namespace framelab::causal {

bool precedes(const frames::Event& p, const frames::Event& q, const CausalConfig& cfg) {
  if (!(q.t > p.t)) return false;
  const double s = frames::interval(p, q, cfg.c_s);
  return cfg.kind == RelationKind::causal ? s >= 0.0 : s > 0.0;
}

frames::Event apply_similarity(const SimilarityMap& m, const frames::Event& e, double c_s) {
  if (!(m.scale > 0.0)) throw ConfigError("dilation factor must be > 0");
  const frames::Event boosted = frames::lorentz(m.v, c_s).apply(e, c_s);
  return frames::Event{m.scale * boosted.t + m.shift_t, m.scale * boosted.x + m.shift_x};
}

EventMap quadratic_map(double amp_t, double amp_x, double c_s) {
  return [amp_t, amp_x, c_s](const frames::Event& e) {
    const double ct = c_s * e.t;
    return frames::Event{(ct + amp_t * e.x * e.x) / c_s, e.x + amp_x * ct * ct};
  };
}

OrderCheck preserves_order(const EventMap& map, const std::vector<frames::Event>& events,
                           const CausalConfig& cfg) {
  if (events.size() < 2) throw ConfigError("order check needs at least 2 events");
  std::vector<frames::Event> images;
  images.reserve(events.size());
  for (const frames::Event& e : events) images.push_back(map(e));
  OrderCheck check;
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = i + 1; j < events.size(); ++j) {
      const bool before_pq = precedes(events[i], events[j], cfg);
      const bool before_qp = precedes(events[j], events[i], cfg);
      const bool after_pq = precedes(images[i], images[j], cfg);
      const bool after_qp = precedes(images[j], images[i], cfg);
      if (before_pq == after_pq && before_qp == after_qp) continue;
      check.violations.push_back(
          {events[i], events[j], before_pq, before_qp, after_pq, after_qp});
    }
  }
  check.preserved = check.violations.empty();
  return check;
}

std::optional<OrderViolation> find_violation(const EventMap& map, const CausalConfig& cfg,
                                             std::size_t n_trials, std::uint64_t seed) {
  if (n_trials < 1) throw ConfigError("violation search needs at least 1 trial");
  SplitMix64 rng(seed);
  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    const frames::Event p{rng.next_in(-1.0, 1.0) / cfg.c_s, rng.next_in(-1.0, 1.0)};
    const frames::Event q{rng.next_in(-1.0, 1.0) / cfg.c_s, rng.next_in(-1.0, 1.0)};
    const bool before_pq = precedes(p, q, cfg);
    const bool before_qp = precedes(q, p, cfg);
    const frames::Event mp = map(p);
    const frames::Event mq = map(q);
    const bool after_pq = precedes(mp, mq, cfg);
    const bool after_qp = precedes(mq, mp, cfg);
    if (before_pq != after_pq || before_qp != after_qp)
      return OrderViolation{p, q, before_pq, before_qp, after_pq, after_qp};
  }
  return std::nullopt;
}

}  // namespace framelab::causal
