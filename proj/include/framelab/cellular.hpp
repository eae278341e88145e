#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace framelab::substrate {

// Neighborhood rule of a radius-r automaton.  The argument packs the 2r+1
// cells centered on the updated site into the low bits of a word, leftmost
// neighbor in bit 0 .. rightmost in bit 2r.  Must map 0 to false (quiescent
// vacuum), checked at construction.
using CaRule = std::function<bool(std::uint64_t)>;

CaRule ca_rule_or();      // any neighbor set -> 1
CaRule ca_rule_parity();  // XOR of the neighborhood

// Second-order reversible automaton on a ring of n cells:
//   s_i(t+1) = rule(neighborhood_i of s(t)) XOR s_i(t-1)
// Because XOR is its own inverse, swap_layers / step / swap_layers undoes a
// step bit-for-bit.  tick() counts steps applied, in either direction.
class CaState {
 public:
  // Starts with previous layer all zero and current layer = seed; an empty
  // seed means all zero.  Requires n > 2r, r <= 31 (the neighborhood word),
  // and a quiescent rule.
  CaState(std::size_t n, std::size_t radius, CaRule rule,
          std::vector<std::uint8_t> seed = {});

  void step();
  void swap_layers();

  std::size_t width() const { return current_.size(); }
  std::size_t radius() const { return radius_; }
  std::int64_t tick() const { return tick_; }
  const std::vector<std::uint8_t>& current() const { return current_; }
  const std::vector<std::uint8_t>& previous() const { return previous_; }

 private:
  std::size_t radius_;
  CaRule rule_;
  std::vector<std::uint8_t> current_;
  std::vector<std::uint8_t> previous_;
  std::vector<std::uint8_t> scratch_;
  std::int64_t tick_ = 0;
};

// Seed with a single live cell at n/2.
std::vector<std::uint8_t> centered_seed(std::size_t n);

// Index range [first, last] of live cells, or nullopt for an all-zero layer.
// No wrap handling: callers keep excitations away from the ring seam.
std::optional<std::pair<std::size_t, std::size_t>> support_interval(
    const std::vector<std::uint8_t>& layer);

}  // namespace framelab::substrate
