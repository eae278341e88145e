#include "framelab/history.hpp"

#include <ostream>

#include "framelab/cellular.hpp"
#include "framelab/chain.hpp"
#include "framelab/csv.hpp"

namespace framelab::substrate {

void ChainHistory::record(const ChainState& state) {
  times.push_back(state.time());
  u.emplace_back(state.displacements().begin(), state.displacements().end());
  v.emplace_back(state.velocities().begin(), state.velocities().end());
}

void ChainHistory::write_csv(std::ostream& out) const {
  csv::Writer w(out);
  w.row("tick", "site", "u", "v");
  for (std::size_t f = 0; f < frames(); ++f)
    for (std::size_t s = 0; s < u[f].size(); ++s)
      w.row(static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(s), u[f][s], v[f][s]);
}

void CaHistory::record(const CaState& state) { layers.push_back(state.current()); }

void CaHistory::write_csv(std::ostream& out) const {
  csv::Writer w(out);
  w.row("tick", "site", "bit");
  for (std::size_t f = 0; f < layers.size(); ++f)
    for (std::size_t s = 0; s < layers[f].size(); ++s)
      w.row(static_cast<std::uint64_t>(f), static_cast<std::uint64_t>(s),
            static_cast<std::uint64_t>(layers[f][s]));
}

}  // namespace framelab::substrate
