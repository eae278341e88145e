#pragma once

#include <cstddef>
#include <vector>

#include "framelab/event.hpp"

namespace framelab::frames {

// An inertial worldline x(t) = x0 + v*t with a clock convention: signals
// propagate at c_s, and the fraction eps of a round trip is assigned to the
// outbound leg (eps = 1/2 is the Einstein convention).  The observer's chart
// origin is its own worldline event at clock zero.
struct ObserverFrame {
  double x0 = 0.0;
  double v = 0.0;
  double c_s = 1.0;
  double epsilon = 0.5;
};

// Throws if c_s <= 0, |v| >= c_s, or epsilon outside (0,1).
void validate(const ObserverFrame& frame);

// Time-dilation factor of a transverse bouncing-signal clock co-moving at v,
// obtained by numerically solving the round-trip geometry
// c_s*dt = sqrt(L^2 + (v*dt)^2) in the medium frame — gamma is derived from
// the signaling construction here, not postulated — and it agrees with
// 1/sqrt(1 - v^2/c_s^2) to better than 1e-9 relative.
double light_clock_gamma(double v, double c_s);

// Radar sounding of one event: clock readings at emission and reception of
// the bouncing signal, plus the chart coordinates they induce.  xi is
// signed: positive when the event lies to the observer's +x side, so charts
// are affine across the whole plane; |xi| = c_s*(tau_receive - tau_emit)/2.
struct RadarReading {
  double tau_emit = 0.0;
  double tau_receive = 0.0;
  double tau = 0.0;  // (1-eps)*tau_emit + eps*tau_receive
  double xi = 0.0;
};

RadarReading radar_coordinates(const Event& e, const ObserverFrame& obs);

// Clock-offset estimate from one request/response exchange: the server's
// timestamp minus the client time interpolated a fraction eps into the round
// trip.  eps = 1/2 is the classical halved round trip.
double cristian_offset(double t_send, double t_server, double t_recv, double epsilon);

// Affine map acting on (c_s*t, x): y' = M*y + b with M row-major.
struct LinearMap2 {
  double m[4] = {1.0, 0.0, 0.0, 1.0};
  double b[2] = {0.0, 0.0};

  double det() const { return m[0] * m[3] - m[1] * m[2]; }
  Event apply(const Event& e, double c_s) const;
};

// The boost with gamma = 1/sqrt(1 - v^2/c_s^2); determinant 1.
LinearMap2 lorentz(double v, double c_s);

// Boost velocity implied by a Lorentz-form map: -c_s * m01 / m00.
double boost_velocity(const LinearMap2& map, double c_s);

struct TransformationFit {
  LinearMap2 map;
  double residual_rms = 0.0;  // over all scalar chart residuals
  double velocity = 0.0;      // boost_velocity of the fitted map
};

// Least-squares affine map from A's radar chart to B's radar chart of the
// same events.  Frames must share c_s and epsilon; needs >= 3 events not all
// on one chart line.
TransformationFit fit_transformation(const std::vector<Event>& events, const ObserverFrame& A,
                                     const ObserverFrame& B);

}  // namespace framelab::frames
