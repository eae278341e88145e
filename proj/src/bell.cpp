#include "framelab/bell.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "framelab/errors.hpp"
#include "framelab/rng.hpp"

namespace framelab::quantum {

namespace {

// Joint cells in the fixed order ++, +-, -+, --.
struct CellSplit {
  double cum1, cum2, cum3;
};

CellSplit cell_boundaries(double theta_a, double theta_b) {
  const double c = std::cos(theta_a - theta_b);
  const double same = (1.0 - c) / 4.0;
  const double diff = (1.0 + c) / 4.0;
  return CellSplit{same, same + diff, same + diff + diff};
}

int draw_cell(SplitMix64& rng, const CellSplit& split) {
  const double u = rng.next_unit();
  if (u < split.cum1) return 0;
  if (u < split.cum2) return 1;
  if (u < split.cum3) return 2;
  return 3;
}

}  // namespace

PairCounts singlet_sample(double theta_a, double theta_b, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("sample size must be >= 1");
  PairCounts counts;
  counts.theta_a = theta_a;
  counts.theta_b = theta_b;
  counts.seed = seed;
  const CellSplit split = cell_boundaries(theta_a, theta_b);
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    switch (draw_cell(rng, split)) {
      case 0: ++counts.n_pp; break;
      case 1: ++counts.n_pm; break;
      case 2: ++counts.n_mp; break;
      default: ++counts.n_mm; break;
    }
  }
  return counts;
}

std::vector<std::uint8_t> singlet_outcome_bits(double theta_a, double theta_b, std::size_t n,
                                               std::uint64_t seed, char side) {
  if (n < 1) throw ConfigError("sample size must be >= 1");
  if (side != 'a' && side != 'b')
    throw ConfigError(std::string("side must be 'a' or 'b', got '") + side + "'");
  std::vector<std::uint8_t> bits;
  bits.reserve(n);
  const CellSplit split = cell_boundaries(theta_a, theta_b);
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const int cell = draw_cell(rng, split);
    // Cells are ++, +-, -+, --: side a is + in cells 0,1; side b in 0,2.
    const bool plus = side == 'a' ? cell < 2 : (cell == 0 || cell == 2);
    bits.push_back(plus ? 1 : 0);
  }
  return bits;
}

double correlation(const PairCounts& counts) {
  const std::uint64_t total = counts.total();
  if (total == 0) throw ConfigError("correlation of empty counts");
  const double agree = static_cast<double>(counts.n_pp + counts.n_mm);
  const double disagree = static_cast<double>(counts.n_pm + counts.n_mp);
  return (agree - disagree) / static_cast<double>(total);
}

ChshResult chsh(double a, double a_prime, double b, double b_prime, std::size_t n,
                std::uint64_t seed) {
  ChshResult result;
  result.a = a;
  result.a_prime = a_prime;
  result.b = b;
  result.b_prime = b_prime;
  result.ab = singlet_sample(a, b, n, seed ^ 0u);
  result.ab_prime = singlet_sample(a, b_prime, n, seed ^ 1u);
  result.a_prime_b = singlet_sample(a_prime, b, n, seed ^ 2u);
  result.a_prime_b_prime = singlet_sample(a_prime, b_prime, n, seed ^ 3u);
  result.s = std::abs(correlation(result.ab) - correlation(result.ab_prime) +
                      correlation(result.a_prime_b) + correlation(result.a_prime_b_prime));
  return result;
}

std::array<double, 16> deterministic_chsh_values() {
  std::array<double, 16> values{};
  std::size_t idx = 0;
  for (int alpha_a : {-1, 1})
    for (int alpha_ap : {-1, 1})
      for (int beta_b : {-1, 1})
        for (int beta_bp : {-1, 1})
          values[idx++] = std::abs(static_cast<double>(
              alpha_a * beta_b - alpha_a * beta_bp + alpha_ap * beta_b + alpha_ap * beta_bp));
  return values;
}

NoSignalingResult no_signaling_check(double theta_a, double theta_b1, double theta_b2,
                                     std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("sample size must be >= 1");
  NoSignalingResult result;
  result.n = n;
  result.seed = seed;
  const PairCounts run1 =
      singlet_sample(theta_a, theta_b1, n, derive_seed(seed, std::bit_cast<std::uint64_t>(theta_b1)));
  const PairCounts run2 =
      singlet_sample(theta_a, theta_b2, n, derive_seed(seed, std::bit_cast<std::uint64_t>(theta_b2)));
  result.marginal1 = static_cast<double>(run1.n_pp + run1.n_pm) / static_cast<double>(n);
  result.marginal2 = static_cast<double>(run2.n_pp + run2.n_pm) / static_cast<double>(n);
  result.delta = std::abs(result.marginal1 - result.marginal2);
  return result;
}

}  // namespace framelab::quantum
