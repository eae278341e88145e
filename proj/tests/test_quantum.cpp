#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "framelab/bell.hpp"
#include "framelab/borel.hpp"
#include "framelab/errors.hpp"
#include "framelab/permutation.hpp"
#include "framelab/qubit.hpp"
#include "framelab/rng.hpp"
#include "framelab/si_units.hpp"

using framelab::ConfigError;
using framelab::SplitMix64;
using framelab::prng_bits;
using namespace framelab::quantum;

TEST_SUITE("quantum") {

TEST_CASE("the flip gate swaps amplitudes and squares to the identity") {
  const Qubit zero = psi0();
  CHECK(zero.alpha == std::complex<double>(0.0, 0.0));
  CHECK(zero.beta == std::complex<double>(1.0, 0.0));
  const Qubit flipped = apply_not(zero);
  CHECK(flipped.alpha == psi1().alpha);
  CHECK(flipped.beta == psi1().beta);
  const Qubit back = apply_not(flipped);
  CHECK(back.alpha == zero.alpha);
  CHECK(back.beta == zero.beta);

  const Qubit super = make_qubit({std::sqrt(0.5), 0.0}, {0.0, std::sqrt(0.5)});
  const Qubit twice = apply_not(apply_not(super));
  CHECK(twice.alpha == super.alpha);
  CHECK(twice.beta == super.beta);

  CHECK_THROWS_AS(make_qubit({1.0, 0.0}, {1.0, 0.0}), ConfigError);
}

TEST_CASE("the tick clock counts gate applications") {
  TickClock clock;
  CHECK(clock.ticks() == 0);
  clock.tick();
  CHECK(clock.state().alpha == psi1().alpha);
  clock.tick();
  CHECK(clock.state().beta == psi0().beta);
  CHECK(clock.ticks() == 2);
}

TEST_CASE("defining constants") {
  CHECK(kTicksPerSecond == 9192631770ULL);
  CHECK(kMetresPerSecond == 299792458ULL);
}

TEST_CASE("rationals reduce and reject zero denominators") {
  CHECK(make_rational(6, 4) == Rational{3, 2});
  CHECK(make_rational(3, -6) == Rational{-1, 2});
  CHECK(make_rational(0, 7) == Rational{0, 1});
  CHECK_THROWS_AS(make_rational(1, 0), ConfigError);
}

TEST_CASE("tick/second conversions are exact and round-trip") {
  CHECK(ticks_to_seconds(0) == Rational{0, 1});
  CHECK(ticks_to_seconds(static_cast<std::int64_t>(kTicksPerSecond)) == Rational{1, 1});
  CHECK_THROWS_AS(ticks_to_seconds(-1), ConfigError);

  for (std::int64_t t : {std::int64_t{0}, std::int64_t{1}, std::int64_t{12345},
                         static_cast<std::int64_t>(kTicksPerSecond)})
    CHECK(seconds_to_ticks(ticks_to_seconds(t)) == t);

  CHECK(seconds_to_ticks(Rational{1, 2}) == 4596315885);
  CHECK(seconds_to_ticks(Rational{1, 3}) == 3064210590);
  // Half a tick rounds away from zero.
  CHECK(seconds_to_ticks(make_rational(1, 2 * static_cast<std::int64_t>(kTicksPerSecond))) == 1);
  CHECK_THROWS_AS(seconds_to_ticks(Rational{-1, 2}), ConfigError);
}

TEST_CASE("ticks per metre of light flight") {
  const MetreInTicks metre = metre_in_ticks();
  // 9192631770 / 299792458 reduced by gcd 14.
  CHECK(metre.ratio == Rational{656616555, 21413747});
  CHECK(std::llround(metre.ratio.value() * 1e4) == 306633);  // 30.6633 to 4 d.p.
  CHECK(metre.rounded == 31);
  // The reduced ratio still multiplies back out exactly.
  CHECK(static_cast<__int128>(metre.ratio.num) * kMetresPerSecond ==
        static_cast<__int128>(kTicksPerSecond) * metre.ratio.den);
}

TEST_CASE("permutations validate, invert, and compose") {
  CHECK(Permutation::identity(4).image() == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK_THROWS_AS(Permutation({0, 0, 1}), ConfigError);
  CHECK_THROWS_AS(Permutation({0, 3}), ConfigError);

  const Permutation rot({1, 2, 0});
  CHECK(rot.inverse().image() == std::vector<std::size_t>{2, 0, 1});

  const Permutation p({1, 0, 2});
  const Permutation q({2, 1, 0});
  CHECK(p.compose(q).image() == std::vector<std::size_t>{2, 0, 1});
  CHECK(p.compose(p.inverse()) == Permutation::identity(3));
  CHECK_THROWS_AS(p.compose(Permutation::identity(4)), ConfigError);
}

TEST_CASE("permutation distances at hand-checked pairs") {
  const Permutation id3 = Permutation::identity(3);
  const Permutation swap01({1, 0, 2});
  const Permutation reverse3({2, 1, 0});
  const Permutation rot3({1, 2, 0});

  CHECK(permutation_distance(id3, swap01, PermutationMetric::cayley) == 1);
  CHECK(permutation_distance(id3, reverse3, PermutationMetric::cayley) == 1);
  CHECK(permutation_distance(id3, rot3, PermutationMetric::cayley) == 2);

  CHECK(permutation_distance(id3, swap01, PermutationMetric::kendall_tau) == 1);
  CHECK(permutation_distance(id3, reverse3, PermutationMetric::kendall_tau) == 3);

  CHECK(permutation_distance(id3, swap01, PermutationMetric::hamming) == 2);
  CHECK(permutation_distance(id3, rot3, PermutationMetric::hamming) == 3);

  CHECK_THROWS_AS(
      permutation_distance(id3, Permutation::identity(4), PermutationMetric::cayley),
      ConfigError);
}

TEST_CASE("distances are right-invariant") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::size_t> base(6);
    std::iota(base.begin(), base.end(), std::size_t{0});
    auto shuffled = [&rng, &base]() {
      std::vector<std::size_t> image = base;
      for (std::size_t i = image.size(); i > 1; --i)
        std::swap(image[i - 1], image[rng.next() % i]);
      return Permutation(image);
    };
    const Permutation p = shuffled();
    const Permutation q = shuffled();
    const Permutation r = shuffled();
    for (const PermutationMetric metric :
         {PermutationMetric::cayley, PermutationMetric::kendall_tau, PermutationMetric::hamming})
      CHECK(permutation_distance(p.compose(r), q.compose(r), metric) ==
            permutation_distance(p, q, metric));
  }
}

TEST_CASE("all three metrics satisfy the metric axioms on S4") {
  std::vector<Permutation> group;
  std::vector<std::size_t> image = {0, 1, 2, 3};
  do {
    group.push_back(Permutation(image));
  } while (std::next_permutation(image.begin(), image.end()));
  REQUIRE(group.size() == 24);

  for (const PermutationMetric metric :
       {PermutationMetric::cayley, PermutationMetric::kendall_tau, PermutationMetric::hamming}) {
    std::vector<std::uint64_t> d(24 * 24);
    for (std::size_t i = 0; i < 24; ++i)
      for (std::size_t j = 0; j < 24; ++j)
        d[i * 24 + j] = permutation_distance(group[i], group[j], metric);
    for (std::size_t i = 0; i < 24; ++i)
      for (std::size_t j = 0; j < 24; ++j) {
        CHECK((d[i * 24 + j] == 0) == (i == j));
        CHECK(d[i * 24 + j] == d[j * 24 + i]);
        for (std::size_t k = 0; k < 24; ++k)
          CHECK(d[i * 24 + k] <= d[i * 24 + j] + d[j * 24 + k]);
      }
  }
}

TEST_CASE("aligned analyzers anticorrelate exactly") {
  const PairCounts counts = singlet_sample(0.7, 0.7, 10000, 1);
  CHECK(counts.n_pp == 0);
  CHECK(counts.n_mm == 0);
  CHECK(counts.total() == 10000);
  CHECK(correlation(counts) == -1.0);

  const PairCounts opposite = singlet_sample(0.0, M_PI, 10000, 2);
  CHECK(opposite.n_pm == 0);
  CHECK(opposite.n_mp == 0);
  CHECK(correlation(opposite) == 1.0);
}

TEST_CASE("orthogonal analyzers fill all four cells uniformly") {
  const std::size_t n = 1000000;
  const PairCounts counts = singlet_sample(0.0, M_PI / 2.0, n, 3);
  const double sigma = 4.0 * std::sqrt(0.25 / static_cast<double>(n));
  for (std::uint64_t cell : {counts.n_pp, counts.n_pm, counts.n_mp, counts.n_mm})
    CHECK(std::abs(static_cast<double>(cell) / static_cast<double>(n) - 0.25) < sigma);
  CHECK(std::abs(correlation(counts)) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sampled correlations approach -cos at the statistical rate") {
  const double delta = M_PI / 3.0;
  for (std::size_t n : {std::size_t{10000}, std::size_t{100000}, std::size_t{1000000}}) {
    const PairCounts counts = singlet_sample(0.0, delta, n, 17);
    const double expected = -std::cos(delta);
    const double sigma = std::sqrt((1.0 - expected * expected) / static_cast<double>(n));
    CHECK(std::abs(correlation(counts) - expected) < 4.0 * sigma);
  }
}

TEST_CASE("marginals are even, and the arithmetic of correlation is exact") {
  const PairCounts counts = singlet_sample(0.3, 1.1, 1000000, 23);
  const double marginal =
      static_cast<double>(counts.n_pp + counts.n_pm) / static_cast<double>(counts.total());
  CHECK(std::abs(marginal - 0.5) < 4.0 * std::sqrt(0.25 / 1e6));

  const PairCounts hand{0.0, 0.0, 3, 1, 2, 4, 0};
  CHECK(correlation(hand) == 0.4);
  CHECK_THROWS_AS(correlation(PairCounts{}), ConfigError);
  CHECK_THROWS_AS(singlet_sample(0.0, 0.0, 0, 1), ConfigError);
}

TEST_CASE("per-side bit streams replay the sampled pairs") {
  const double a = 0.2;
  const double b = 1.9;
  const std::size_t n = 20000;
  const std::uint64_t seed = 29;
  const std::vector<std::uint8_t> bits_a = singlet_outcome_bits(a, b, n, seed, 'a');
  const std::vector<std::uint8_t> bits_b = singlet_outcome_bits(a, b, n, seed, 'b');
  const PairCounts counts = singlet_sample(a, b, n, seed);

  PairCounts rebuilt{a, b, 0, 0, 0, 0, seed};
  for (std::size_t i = 0; i < n; ++i) {
    if (bits_a[i] && bits_b[i]) ++rebuilt.n_pp;
    if (bits_a[i] && !bits_b[i]) ++rebuilt.n_pm;
    if (!bits_a[i] && bits_b[i]) ++rebuilt.n_mp;
    if (!bits_a[i] && !bits_b[i]) ++rebuilt.n_mm;
  }
  CHECK(rebuilt.n_pp == counts.n_pp);
  CHECK(rebuilt.n_pm == counts.n_pm);
  CHECK(rebuilt.n_mp == counts.n_mp);
  CHECK(rebuilt.n_mm == counts.n_mm);
  CHECK_THROWS_AS(singlet_outcome_bits(a, b, n, seed, 'c'), ConfigError);

  // Aligned analyzers: the two sides disagree pair by pair.
  const std::vector<std::uint8_t> xa = singlet_outcome_bits(0.4, 0.4, 1000, 31, 'a');
  const std::vector<std::uint8_t> xb = singlet_outcome_bits(0.4, 0.4, 1000, 31, 'b');
  for (std::size_t i = 0; i < xa.size(); ++i) CHECK((xa[i] ^ xb[i]) == 1);
}

TEST_CASE("optimal analyzer settings reach the quantum bound") {
  const ChshResult result =
      chsh(0.0, M_PI / 2.0, M_PI / 4.0, 3.0 * M_PI / 4.0, 1000000, 0);
  CHECK(std::abs(result.s - 2.0 * std::sqrt(2.0)) <= 0.01);
}

TEST_CASE("degenerate settings pin every correlation at -1") {
  const ChshResult result = chsh(0.0, 0.0, 0.0, 0.0, 1000, 5);
  CHECK(correlation(result.ab) == -1.0);
  CHECK(correlation(result.ab_prime) == -1.0);
  CHECK(correlation(result.a_prime_b) == -1.0);
  CHECK(correlation(result.a_prime_b_prime) == -1.0);
  // |(-1) - (-1) + (-1) + (-1)| = 2, exactly.
  CHECK(result.s == 2.0);
}

TEST_CASE("every local deterministic strategy sits exactly at 2") {
  const std::array<double, 16> values = deterministic_chsh_values();
  for (double s : values) {
    CHECK(s <= 2.0);
    CHECK(s == 2.0);  // the CHSH combination collapses to |±2| for all 16
  }
}

TEST_CASE("remote setting choices leave the local marginal alone") {
  const NoSignalingResult same = no_signaling_check(0.3, 1.0, 1.0, 100000, 7);
  CHECK(same.delta == 0.0);  // equal settings replay the identical branch

  const std::size_t n = 1000000;
  const NoSignalingResult result = no_signaling_check(0.3, 1.0, 2.4, n, 7);
  CHECK(result.delta < 4.0 * std::sqrt(0.25 / static_cast<double>(n)));

  // Deterministic: the same call reproduces the same marginals.
  const NoSignalingResult again = no_signaling_check(0.3, 1.0, 2.4, n, 7);
  CHECK(again.marginal1 == result.marginal1);
  CHECK(again.marginal2 == result.marginal2);
}

TEST_CASE("block frequencies of generator bits pass up to k = 3") {
  const BorelReport report = borel_block_test(prng_bits(1000000, 123), 3);
  REQUIRE(report.blocks.size() == 3);
  CHECK(report.all_pass);
  for (const BlockReport& block : report.blocks) {
    CHECK(block.counts.size() == (std::size_t{1} << block.k));
    CHECK(block.max_abs_deviation <= block.bound);
    const std::uint64_t total =
        std::accumulate(block.counts.begin(), block.counts.end(), std::uint64_t{0});
    CHECK(total == block.n_blocks);
  }
}

TEST_CASE("the alternating sequence passes k=1 but fails k=2") {
  std::vector<std::uint8_t> alternating(100000);
  for (std::size_t i = 0; i < alternating.size(); ++i)
    alternating[i] = static_cast<std::uint8_t>(i & 1);
  const BorelReport report = borel_block_test(alternating, 2);
  CHECK(report.passes_k(1));
  CHECK(!report.passes_k(2));
  CHECK(!report.all_pass);
  // Non-overlapping pairs of 0,1,0,1,... are all the block "01" = value 1.
  CHECK(report.blocks[1].counts[1] == report.blocks[1].n_blocks);

  const std::vector<std::uint8_t> zeros(100000, 0);
  CHECK(!borel_block_test(zeros, 1).passes_k(1));
}

TEST_CASE("one side of the pair stream is itself a fair coin") {
  const std::vector<std::uint8_t> bits =
      singlet_outcome_bits(0.0, M_PI / 2.0, 200000, 37, 'a');
  const BorelReport report = borel_block_test(bits, 2);
  CHECK(report.all_pass);
}

TEST_CASE("block-test preconditions") {
  CHECK_THROWS_AS(borel_block_test(std::vector<std::uint8_t>(1000, 0), 0), ConfigError);
  CHECK_THROWS_AS(borel_block_test(std::vector<std::uint8_t>(1000, 0), 21), ConfigError);
  // Needs 2^k * 100 bits.
  CHECK_THROWS_AS(borel_block_test(std::vector<std::uint8_t>(799, 0), 3), ConfigError);
  CHECK_NOTHROW(borel_block_test(std::vector<std::uint8_t>(800, 0), 3));
}

}  // TEST_SUITE
