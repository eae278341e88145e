#pragma once

#include <cstdint>

#include "framelab/qubit.hpp"

namespace framelab::quantum {

// Defined metres per second of light in vacuum.
inline constexpr std::uint64_t kMetresPerSecond = 299'792'458ULL;

// Exact nonnegative ratio, kept reduced with a positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

// Reduces num/den; den must be nonzero and the result is normalized to a
// positive denominator.
Rational make_rational(std::int64_t num, std::int64_t den);

// Exact tick count -> seconds as a reduced ratio.  Negative counts rejected.
Rational ticks_to_seconds(std::int64_t ticks);

// Exact seconds -> ticks, rounding half away from zero when the ratio does
// not land on an integer.  Negative durations rejected; the round trip
// through ticks_to_seconds is the identity on integer tick counts.
std::int64_t seconds_to_ticks(const Rational& seconds);

// Flip-clock ticks during one metre of light flight: the exact ratio of the
// two defining SI constants plus its nearest integer.
struct MetreInTicks {
  Rational ratio;           // 9192631770 / 299792458, reduced
  std::int64_t rounded;     // 31
};

MetreInTicks metre_in_ticks();

}  // namespace framelab::quantum
