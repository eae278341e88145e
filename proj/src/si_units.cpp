#include "framelab/si_units.hpp"

#include <numeric>
#include <string>

#include "framelab/errors.hpp"

namespace framelab::quantum {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ConfigError("rational denominator must be nonzero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

Rational ticks_to_seconds(std::int64_t ticks) {
  if (ticks < 0) throw ConfigError("tick count must be nonnegative, got " + std::to_string(ticks));
  return make_rational(ticks, static_cast<std::int64_t>(kTicksPerSecond));
}

std::int64_t seconds_to_ticks(const Rational& seconds) {
  if (seconds.den <= 0) throw ConfigError("rational denominator must be positive");
  if (seconds.num < 0) throw ConfigError("duration must be nonnegative");
  const __int128 scaled = static_cast<__int128>(seconds.num) * kTicksPerSecond;
  const __int128 half = seconds.den / 2;
  return static_cast<std::int64_t>((scaled + half) / seconds.den);
}

MetreInTicks metre_in_ticks() {
  const Rational ratio = make_rational(static_cast<std::int64_t>(kTicksPerSecond),
                                       static_cast<std::int64_t>(kMetresPerSecond));
  MetreInTicks result;
  result.ratio = ratio;
  result.rounded = seconds_to_ticks(make_rational(1, static_cast<std::int64_t>(kMetresPerSecond)));
  return result;
}

}  // namespace framelab::quantum
