#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace framelab::substrate {

class ChainState;
class CaState;

// Frame-major recording of a chain run: frame f holds the full displacement
// and velocity arrays at times[f].  The tick column written to CSV is the
// frame index.
struct ChainHistory {
  double spacing = 1.0;
  std::vector<double> times;
  std::vector<std::vector<double>> u;
  std::vector<std::vector<double>> v;

  std::size_t frames() const { return times.size(); }
  std::size_t sites() const { return u.empty() ? 0 : u.front().size(); }
  void record(const ChainState& state);
  // Header `tick,site,u,v`, rows tick-major then site-minor.
  void write_csv(std::ostream& out) const;
};

// Per-tick snapshots of an automaton's current layer.
struct CaHistory {
  std::vector<std::vector<std::uint8_t>> layers;

  std::size_t frames() const { return layers.size(); }
  void record(const CaState& state);
  // Header `tick,site,bit`, rows tick-major then site-minor.
  void write_csv(std::ostream& out) const;
};

}  // namespace framelab::substrate
