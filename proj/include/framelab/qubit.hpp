#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>

#include "framelab/errors.hpp"

namespace framelab::quantum {

// Transitions of the tick qubit per SI second.
inline constexpr std::uint64_t kTicksPerSecond = 9'192'631'770ULL;

// Two-level state (alpha, beta), normalized to within 1e-12.
struct Qubit {
  std::complex<double> alpha;
  std::complex<double> beta;
};

inline Qubit make_qubit(std::complex<double> alpha, std::complex<double> beta) {
  const double norm = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm - 1.0) > 1e-12)
    throw ConfigError("qubit amplitudes must be normalized: |a|^2 + |b|^2 = " +
                      std::to_string(norm));
  return Qubit{alpha, beta};
}

inline Qubit psi0() { return Qubit{{0.0, 0.0}, {1.0, 0.0}}; }
inline Qubit psi1() { return Qubit{{1.0, 0.0}, {0.0, 0.0}}; }

// The bit-flip gate [[0,1],[1,0]]: swaps the amplitudes.  Involution, norm
// preserving by construction.
inline Qubit apply_not(const Qubit& q) { return Qubit{q.beta, q.alpha}; }

// Counts gate applications of the flip clock; the count never decreases.
class TickClock {
 public:
  TickClock() : state_(psi0()) {}
  explicit TickClock(Qubit start) : state_(std::move(start)) {}

  void tick() {
    state_ = apply_not(state_);
    ++ticks_;
  }

  std::uint64_t ticks() const { return ticks_; }
  const Qubit& state() const { return state_; }

 private:
  Qubit state_;
  std::uint64_t ticks_ = 0;
};

}  // namespace framelab::quantum
