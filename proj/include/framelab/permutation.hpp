#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace framelab::quantum {

// Bijection on {0..n-1}, stored as its image array.
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> image);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return image_.size(); }
  std::size_t operator()(std::size_t i) const { return image_[i]; }
  const std::vector<std::size_t>& image() const { return image_; }

  Permutation inverse() const;
  // (this o other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::size_t> image_;
};

enum class PermutationMetric { cayley, kendall_tau, hamming };

// Right-invariant distances, all reduced to the relative permutation
// r = p o q^-1:
//   cayley      = n - (number of cycles of r)     [minimal transpositions]
//   kendall_tau = inversion count of r            [minimal adjacent swaps]
//   hamming     = positions where p and q disagree
std::uint64_t permutation_distance(const Permutation& p, const Permutation& q,
                                   PermutationMetric metric);

}  // namespace framelab::quantum
