#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace framelab::propagation {

// One phased-array drive element firing: `site` is 1-based, matching the
// array-synchronization tables this realizes.
struct ScheduleEntry {
  std::int64_t tick;
  std::size_t site;
};

// Timed excitation pattern whose locus advances speed_multiplier sites per
// tick.  tick_duration is the time for the slowest (hop-1) signal to cross
// one lattice spacing, so the locus speed is speed_multiplier in units of
// that baseline signal speed.
struct ExcitationSchedule {
  std::vector<ScheduleEntry> entries;
  int speed_multiplier = 1;
  double spacing = 1.0;
  double tick_duration = 1.0;
};

// Entries (t, 1 + c_mult*t) for t = 0, 1, 2, ... while the site stays within
// n_sites and t <= max_tick.
ExcitationSchedule table1_schedule(int c_mult, std::size_t n_sites, std::int64_t max_tick);

// CSV with header `tick,site`, one row per entry.
void write_csv(const ExcitationSchedule& schedule, std::ostream& out);

}  // namespace framelab::propagation
