#include "framelab/borel.hpp"

#include <cmath>
#include <string>

#include "framelab/errors.hpp"

namespace framelab::quantum {

BorelReport borel_block_test(const std::vector<std::uint8_t>& bits, std::size_t max_k) {
  if (max_k < 1 || max_k > 20)
    throw ConfigError("block length limit must be in 1..20, got " + std::to_string(max_k));
  const std::size_t required = (std::size_t{1} << max_k) * 100;
  if (bits.size() < required)
    throw ConfigError("sequence of " + std::to_string(bits.size()) +
                      " bits is too short for blocks up to " + std::to_string(max_k) +
                      " (need " + std::to_string(required) + ")");

  BorelReport report;
  report.all_pass = true;
  for (std::size_t k = 1; k <= max_k; ++k) {
    BlockReport block;
    block.k = k;
    block.n_blocks = bits.size() / k;
    block.counts.assign(std::size_t{1} << k, 0);
    for (std::uint64_t j = 0; j < block.n_blocks; ++j) {
      std::uint64_t value = 0;
      for (std::size_t b = 0; b < k; ++b)
        value = (value << 1) | bits[j * k + b];
      ++block.counts[value];
    }
    const double expected = std::ldexp(1.0, -static_cast<int>(k));  // 2^-k
    block.bound =
        4.0 * std::sqrt(expected * (1.0 - expected) / static_cast<double>(block.n_blocks));
    for (std::uint64_t count : block.counts) {
      const double deviation =
          std::abs(static_cast<double>(count) / static_cast<double>(block.n_blocks) - expected);
      block.max_abs_deviation = std::max(block.max_abs_deviation, deviation);
    }
    block.pass = block.max_abs_deviation <= block.bound;
    report.all_pass = report.all_pass && block.pass;
    report.blocks.push_back(std::move(block));
  }
  return report;
}

}  // namespace framelab::quantum
