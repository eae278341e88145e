#include "framelab/front.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "framelab/csv.hpp"
#include "framelab/errors.hpp"

namespace framelab::propagation {

substrate::ChainHistory drive(substrate::ChainState state, const ExcitationSchedule& schedule,
                              double impulse, double dt, std::size_t ticks_per_unit,
                              std::size_t n_ticks) {
  if (ticks_per_unit == 0) throw ConfigError("ticks_per_unit must be >= 1");
  if (std::abs(dt * static_cast<double>(ticks_per_unit) - schedule.tick_duration) >
      1e-9 * schedule.tick_duration)
    throw ConfigError("dt * ticks_per_unit must span one schedule tick: got " +
                      std::to_string(dt * static_cast<double>(ticks_per_unit)) + " vs " +
                      std::to_string(schedule.tick_duration));
  for (std::size_t i = 0; i < schedule.entries.size(); ++i) {
    const ScheduleEntry& entry = schedule.entries[i];
    if (entry.site < 1 || entry.site > state.size())
      throw ConfigError("schedule site " + std::to_string(entry.site) +
                        " outside chain of " + std::to_string(state.size()) + " sites");
    if (i > 0 && entry.tick <= schedule.entries[i - 1].tick)
      throw ConfigError("schedule ticks must be strictly increasing");
  }

  substrate::ChainHistory history;
  history.spacing = state.profile().spacing();
  std::size_t next = 0;
  for (std::size_t tick = 0; tick < n_ticks; ++tick) {
    if (tick > 0)
      for (std::size_t s = 0; s < ticks_per_unit; ++s) state.step(dt);
    while (next < schedule.entries.size() &&
           schedule.entries[next].tick == static_cast<std::int64_t>(tick)) {
      state.kick(schedule.entries[next].site - 1, impulse);
      ++next;
    }
    history.record(state);
  }
  return history;
}

FrontFit estimate_front_speed(const substrate::ChainHistory& history, double threshold) {
  if (!(threshold > 0.0)) throw ConfigError("front threshold must be > 0");
  const std::size_t n = history.sites();
  const std::size_t frames = history.frames();

  FrontFit fit;
  fit.threshold = threshold;

  // Per-site first crossing of |u| above the threshold, linearly
  // interpolated in amplitude between the bracketing frames.
  std::vector<double> crossing(n, -1.0);
  std::size_t crossed = 0;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t f = 0; f < frames; ++f) {
      const double amp = std::abs(history.u[f][s]);
      if (amp <= threshold) continue;
      if (f == 0) {
        crossing[s] = history.times[0];
      } else {
        const double prev = std::abs(history.u[f - 1][s]);
        const double frac = (threshold - prev) / (amp - prev);
        crossing[s] = history.times[f - 1] + frac * (history.times[f] - history.times[f - 1]);
      }
      ++crossed;
      break;
    }
  }
  if (crossed < 8)
    throw InsufficientSignalError("front fit needs at least 8 crossed sites, got " +
                                  std::to_string(crossed));

  std::size_t source = n;
  for (std::size_t s = 0; s < n; ++s) {
    if (crossing[s] < 0.0) continue;
    if (source == n || crossing[s] < crossing[source]) source = s;
  }
  fit.source_site = source;

  for (std::size_t s = 0; s < n; ++s) {
    if (crossing[s] < 0.0) continue;
    const std::size_t gap = s > source ? s - source : source - s;
    const double dist = history.spacing * static_cast<double>(std::min(gap, n - gap));
    fit.sites.push_back(s);
    fit.distances.push_back(dist);
    fit.crossing_times.push_back(crossing[s]);
  }
  std::vector<std::size_t> order(fit.sites.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (fit.distances[a] != fit.distances[b]) return fit.distances[a] < fit.distances[b];
    return fit.sites[a] < fit.sites[b];
  });
  FrontFit sorted = fit;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.sites[i] = fit.sites[order[i]];
    sorted.distances[i] = fit.distances[order[i]];
    sorted.crossing_times[i] = fit.crossing_times[order[i]];
  }
  fit = std::move(sorted);

  // Time-vs-distance line over the middle half: drop the quarter nearest the
  // source (kick transient) and the farthest quarter (threshold tail).
  const std::size_t count = fit.sites.size();
  const std::size_t lo = count / 4;
  const std::size_t hi = count - count / 4;
  double mean_d = 0.0;
  double mean_t = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    mean_d += fit.distances[i];
    mean_t += fit.crossing_times[i];
  }
  const auto window = static_cast<double>(hi - lo);
  mean_d /= window;
  mean_t /= window;
  double var_d = 0.0;
  double cov_dt = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double dd = fit.distances[i] - mean_d;
    var_d += dd * dd;
    cov_dt += dd * (fit.crossing_times[i] - mean_t);
  }
  if (var_d <= 0.0) throw DegenerateFitError("front fit window has no distance spread");
  const double slope = cov_dt / var_d;  // time per length
  if (slope <= 0.0) throw DegenerateFitError("front fit slope is not positive");
  const double intercept = mean_t - slope * mean_d;
  double sq = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double r = fit.crossing_times[i] - (intercept + slope * fit.distances[i]);
    sq += r * r;
  }
  fit.speed = 1.0 / slope;
  fit.residual = std::sqrt(sq / window);
  return fit;
}

void write_csv(const FrontFit& fit, std::ostream& out) {
  csv::Writer w(out);
  w.row("site", "crossing_time");
  for (std::size_t i = 0; i < fit.sites.size(); ++i)
    w.row(static_cast<std::uint64_t>(fit.sites[i]), fit.crossing_times[i]);
}

}  // namespace framelab::propagation
