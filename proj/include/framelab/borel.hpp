#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace framelab::quantum {

// Frequency audit of the 2^k non-overlapping k-blocks of a bit sequence.
// A block's value packs its bits first-bit-highest.
struct BlockReport {
  std::size_t k = 0;
  std::uint64_t n_blocks = 0;              // floor(len / k)
  std::vector<std::uint64_t> counts;       // one per block value
  double bound = 0.0;                      // 4 * sqrt(2^-k (1 - 2^-k) / n_blocks)
  double max_abs_deviation = 0.0;          // max over values of |freq - 2^-k|
  bool pass = false;
};

struct BorelReport {
  std::vector<BlockReport> blocks;  // k = 1..max_k
  bool all_pass = false;

  bool passes_k(std::size_t k) const { return blocks.at(k - 1).pass; }
};

// Requires length >= 2^max_k * 100 so every block value has room to appear.
BorelReport borel_block_test(const std::vector<std::uint8_t>& bits, std::size_t max_k);

}  // namespace framelab::quantum
