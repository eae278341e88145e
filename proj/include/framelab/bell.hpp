#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace framelab::quantum {

// Tally of joint +/- outcomes for one analyzer-setting pair, plus the seed
// that produced it.
struct PairCounts {
  double theta_a = 0.0;
  double theta_b = 0.0;
  std::uint64_t n_pp = 0;
  std::uint64_t n_pm = 0;
  std::uint64_t n_mp = 0;
  std::uint64_t n_mm = 0;
  std::uint64_t seed = 0;

  std::uint64_t total() const { return n_pp + n_pm + n_mp + n_mm; }
};

// n joint outcomes of the anticorrelated pair state at analyzer angles
// (theta_a, theta_b), drawn from the four-cell distribution
//   P(++) = P(--) = (1 - cos(theta_a - theta_b)) / 4
//   P(+-) = P(-+) = (1 + cos(theta_a - theta_b)) / 4
// directly — the correlations are primitive here, no per-particle mechanism.
// Deterministic given the seed.
PairCounts singlet_sample(double theta_a, double theta_b, std::size_t n, std::uint64_t seed);

// The same stream reduced to one side's outcomes, + -> 1 and - -> 0.
// side is 'a' or 'b'; identical (seed, angles, n) replays the same pairs
// singlet_sample counts.
std::vector<std::uint8_t> singlet_outcome_bits(double theta_a, double theta_b, std::size_t n,
                                               std::uint64_t seed, char side);

// (n_pp + n_mm - n_pm - n_mp) / total; expectation -cos(theta_a - theta_b).
double correlation(const PairCounts& counts);

struct ChshResult {
  double a = 0.0, a_prime = 0.0, b = 0.0, b_prime = 0.0;
  PairCounts ab, ab_prime, a_prime_b, a_prime_b_prime;
  double s = 0.0;  // |E(a,b) - E(a,b') + E(a',b) + E(a',b')|
};

// Four sampled correlations at per-setting seeds seed^0, seed^1, seed^2,
// seed^3 (in the member order above).
ChshResult chsh(double a, double a_prime, double b, double b_prime, std::size_t n,
                std::uint64_t seed);

// S of every local deterministic strategy (each side's outcome a fixed sign
// per setting): 16 values, none above 2.
std::array<double, 16> deterministic_chsh_values();

struct NoSignalingResult {
  double marginal1 = 0.0;  // P(A = + | theta_b1)
  double marginal2 = 0.0;  // P(A = + | theta_b2)
  double delta = 0.0;      // |marginal1 - marginal2|
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

// Compares A's + marginal across two far-side settings.  Each branch runs at
// a seed derived from the far-side angle's bit pattern, so equal settings
// replay identically (delta exactly 0) and distinct settings are
// independent draws.
NoSignalingResult no_signaling_check(double theta_a, double theta_b1, double theta_b2,
                                     std::size_t n, std::uint64_t seed);

}  // namespace framelab::quantum
