#include "framelab/schedule.hpp"

#include <ostream>
#include <string>

#include "framelab/csv.hpp"
#include "framelab/errors.hpp"

namespace framelab::propagation {

ExcitationSchedule table1_schedule(int c_mult, std::size_t n_sites, std::int64_t max_tick) {
  if (c_mult < 1)
    throw ConfigError("speed multiplier must be >= 1, got " + std::to_string(c_mult));
  if (n_sites == 0) throw ConfigError("schedule needs at least one site");
  if (max_tick < 0) throw ConfigError("max tick must be >= 0");
  ExcitationSchedule schedule;
  schedule.speed_multiplier = c_mult;
  for (std::int64_t t = 0; t <= max_tick; ++t) {
    const std::uint64_t site = 1 + static_cast<std::uint64_t>(c_mult) * t;
    if (site > n_sites) break;
    schedule.entries.push_back({t, static_cast<std::size_t>(site)});
  }
  return schedule;
}

void write_csv(const ExcitationSchedule& schedule, std::ostream& out) {
  csv::Writer w(out);
  w.row("tick", "site");
  for (const ScheduleEntry& entry : schedule.entries)
    w.row(entry.tick, static_cast<std::uint64_t>(entry.site));
}

}  // namespace framelab::propagation
