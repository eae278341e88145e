#include "framelab/cellular.hpp"

#include <string>

#include "framelab/errors.hpp"

namespace framelab::substrate {

CaRule ca_rule_or() {
  return [](std::uint64_t window) { return window != 0; };
}

CaRule ca_rule_parity() {
  return [](std::uint64_t window) { return (__builtin_popcountll(window) & 1) != 0; };
}

CaState::CaState(std::size_t n, std::size_t radius, CaRule rule,
                 std::vector<std::uint8_t> seed)
    : radius_(radius), rule_(std::move(rule)) {
  if (radius == 0 || radius > 31)
    throw ConfigError("automaton radius must be in 1..31, got " + std::to_string(radius));
  if (n <= 2 * radius)
    throw ConfigError("automaton of " + std::to_string(n) + " cells is too small for radius " +
                      std::to_string(radius));
  if (!rule_) throw ConfigError("automaton rule must be callable");
  if (rule_(0)) throw ConfigError("automaton rule must be quiescent: rule(all-zero) = 0");
  if (seed.empty()) seed.assign(n, 0);
  if (seed.size() != n)
    throw ConfigError("seed pattern length " + std::to_string(seed.size()) +
                      " does not match automaton width " + std::to_string(n));
  for (std::uint8_t& bit : seed) bit = bit ? 1 : 0;
  current_ = std::move(seed);
  previous_.assign(n, 0);
  scratch_.assign(n, 0);
}

void CaState::step() {
  const std::size_t n = current_.size();
  const std::size_t span = 2 * radius_ + 1;
  // Prime the window with cells [-r, r) of site 0, then slide: shift right,
  // admit the new rightmost neighbor in bit 2r.
  std::uint64_t window = 0;
  for (std::size_t j = 0; j + 1 < span; ++j) {
    const std::size_t cell = (n + j - radius_) % n;
    window |= static_cast<std::uint64_t>(current_[cell]) << j;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t incoming = i + radius_;
    if (incoming >= n) incoming -= n;
    window |= static_cast<std::uint64_t>(current_[incoming]) << (span - 1);
    scratch_[i] = static_cast<std::uint8_t>(rule_(window)) ^ previous_[i];
    window >>= 1;
  }
  previous_.swap(current_);
  current_.swap(scratch_);
  ++tick_;
}

void CaState::swap_layers() { previous_.swap(current_); }

std::vector<std::uint8_t> centered_seed(std::size_t n) {
  std::vector<std::uint8_t> seed(n, 0);
  seed[n / 2] = 1;
  return seed;
}

std::optional<std::pair<std::size_t, std::size_t>> support_interval(
    const std::vector<std::uint8_t>& layer) {
  std::size_t first = layer.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < layer.size(); ++i) {
    if (!layer[i]) continue;
    if (first == layer.size()) first = i;
    last = i;
  }
  if (first == layer.size()) return std::nullopt;
  return std::make_pair(first, last);
}

}  // namespace framelab::substrate
