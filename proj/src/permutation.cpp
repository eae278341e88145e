#include "framelab/permutation.hpp"

#include <numeric>
#include <string>

#include "framelab/errors.hpp"

namespace framelab::quantum {

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t target : image_) {
    if (target >= image_.size() || seen[target])
      throw ConfigError("permutation image is not a bijection on {0.." +
                        std::to_string(image_.size()) + "-1}");
    seen[target] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), std::size_t{0});
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> image(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) image[image_[i]] = i;
  return Permutation(std::move(image));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw ConfigError("permutation sizes differ");
  std::vector<std::size_t> image(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) image[i] = image_[other.image_[i]];
  return Permutation(std::move(image));
}

namespace {

std::uint64_t cycle_count(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  std::uint64_t cycles = 0;
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    ++cycles;
    for (std::size_t i = start; !seen[i]; i = p(i)) seen[i] = true;
  }
  return cycles;
}

std::uint64_t inversion_count(const Permutation& p) {
  std::uint64_t inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p(i) > p(j)) ++inversions;
  return inversions;
}

}  // namespace

std::uint64_t permutation_distance(const Permutation& p, const Permutation& q,
                                   PermutationMetric metric) {
  if (p.size() != q.size()) throw ConfigError("permutation sizes differ");
  switch (metric) {
    case PermutationMetric::hamming: {
      std::uint64_t mismatches = 0;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p(i) != q(i)) ++mismatches;
      return mismatches;
    }
    case PermutationMetric::cayley: {
      const Permutation relative = p.compose(q.inverse());
      return p.size() - cycle_count(relative);
    }
    case PermutationMetric::kendall_tau:
    default: {
      const Permutation relative = p.compose(q.inverse());
      return inversion_count(relative);
    }
  }
}

}  // namespace framelab::quantum
