#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "framelab/chain.hpp"
#include "framelab/history.hpp"
#include "framelab/schedule.hpp"

namespace framelab::propagation {

// Integrates `state` for n_ticks schedule ticks, applying a velocity kick of
// `impulse` at each scheduled (tick, site) and recording one history frame
// per tick (after that tick's excitation).  Each tick is integrated as
// ticks_per_unit substeps of dt, which must span exactly one tick_duration:
// |dt * ticks_per_unit - tick_duration| <= 1e-9 * tick_duration.
// Schedule sites are 1-based and must lie within the chain.
substrate::ChainHistory drive(substrate::ChainState state, const ExcitationSchedule& schedule,
                              double impulse, double dt, std::size_t ticks_per_unit,
                              std::size_t n_ticks);

// Threshold-crossing front fit.  `sites` lists every site whose |u| first
// exceeded the threshold, sorted by (periodic minimum-image) distance from
// the earliest-crossing site; speed is 1/slope of the time-vs-distance
// least-squares line over the middle 50% of that list, trimming the source
// transient and the far tail.
struct FrontFit {
  double threshold = 0.0;
  std::size_t source_site = 0;
  std::vector<std::size_t> sites;
  std::vector<double> distances;
  std::vector<double> crossing_times;
  double speed = 0.0;
  double residual = 0.0;  // RMS time residual over the fitted window
};

// Requires at least 8 crossed sites; crossing times are interpolated
// linearly in |u| between the bracketing frames.
FrontFit estimate_front_speed(const substrate::ChainHistory& history, double threshold);

// CSV with header `site,crossing_time`, one row per crossed site.
void write_csv(const FrontFit& fit, std::ostream& out);

}  // namespace framelab::propagation
