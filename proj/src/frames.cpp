#include "framelab/frames.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "framelab/errors.hpp"

namespace framelab::frames {

double interval(const Event& e1, const Event& e2, double c_s) {
  const double dt = c_s * (e2.t - e1.t);
  const double dx = e2.x - e1.x;
  return dt * dt - dx * dx;
}

void validate(const ObserverFrame& frame) {
  if (!(frame.c_s > 0.0)) throw ConfigError("signal speed must be > 0");
  if (!(std::abs(frame.v) < frame.c_s))
    throw ConfigError("observer speed " + std::to_string(frame.v) +
                      " must be below the signal speed " + std::to_string(frame.c_s));
  if (!(frame.epsilon > 0.0 && frame.epsilon < 1.0))
    throw ConfigError("simultaneity parameter must lie in (0,1)");
}

double light_clock_gamma(double v, double c_s) {
  if (!(c_s > 0.0)) throw ConfigError("signal speed must be > 0");
  if (!(std::abs(v) < c_s))
    throw ConfigError("no signal round trip exists at observer speed " + std::to_string(v) +
                      " >= signal speed " + std::to_string(c_s));
  // One leg between co-moving mirrors a unit length apart, transverse to the
  // motion: the signal covers hypot(L, v*dt) of medium in time dt at speed
  // c_s.  f is negative at 0 and grows without bound, so bisection on
  // c_s*dt - hypot(L, v*dt) finds the unique leg time.
  const double L = 1.0;
  double lo = 0.0;
  double hi = 2.0 * L / (c_s - std::abs(v)) + 1.0 / c_s;
  for (int i = 0; i < 200 && (hi - lo) > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (c_s * mid - std::hypot(L, v * mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double leg = 0.5 * (lo + hi);
  // Rest-frame leg takes L/c_s, so the dilation is the time ratio.
  return leg * c_s / L;
}

RadarReading radar_coordinates(const Event& e, const ObserverFrame& obs) {
  validate(obs);
  const double c = obs.c_s;
  // The two null rays through the event cross the worldline x0 + v*t at the
  // emission and reception times of the sounding signal.
  const double along = (c * e.t - (e.x - obs.x0)) / (c - obs.v);
  const double against = (c * e.t + (e.x - obs.x0)) / (c + obs.v);
  const double t1 = std::min(along, against);
  const double t2 = std::max(along, against);
  const double gamma = light_clock_gamma(obs.v, c);
  RadarReading r;
  r.tau_emit = t1 / gamma;
  r.tau_receive = t2 / gamma;
  r.tau = (1.0 - obs.epsilon) * r.tau_emit + obs.epsilon * r.tau_receive;
  const double side = e.x - (obs.x0 + obs.v * e.t);
  const double range = c * (r.tau_receive - r.tau_emit) / 2.0;
  r.xi = side < 0.0 ? -range : range;
  return r;
}

double cristian_offset(double t_send, double t_server, double t_recv, double epsilon) {
  if (t_recv < t_send) throw ConfigError("reply timestamp precedes request timestamp");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ConfigError("simultaneity parameter must lie in (0,1)");
  return t_server - (t_send + epsilon * (t_recv - t_send));
}

Event LinearMap2::apply(const Event& e, double c_s) const {
  const double y0 = c_s * e.t;
  const double y1 = e.x;
  const double z0 = m[0] * y0 + m[1] * y1 + b[0];
  const double z1 = m[2] * y0 + m[3] * y1 + b[1];
  return Event{z0 / c_s, z1};
}

LinearMap2 lorentz(double v, double c_s) {
  if (!(c_s > 0.0)) throw ConfigError("signal speed must be > 0");
  if (!(std::abs(v) < c_s)) throw ConfigError("boost speed must be below the signal speed");
  const double beta = v / c_s;
  const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
  LinearMap2 map;
  map.m[0] = gamma;
  map.m[1] = -gamma * beta;
  map.m[2] = -gamma * beta;
  map.m[3] = gamma;
  return map;
}

double boost_velocity(const LinearMap2& map, double c_s) { return -c_s * map.m[1] / map.m[0]; }

namespace {

// Solve the 3x3 system A*x = rhs in place, partial pivoting.  Returns false
// when A is numerically singular.
bool solve3(double (&A)[3][3], double (&rhs)[3], double (&out)[3]) {
  int perm[3] = {0, 1, 2};
  double scale = 0.0;
  for (auto& row : A)
    for (double entry : row) scale = std::max(scale, std::abs(entry));
  if (scale == 0.0) return false;
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(A[perm[r]][col]) > std::abs(A[perm[pivot]][col])) pivot = r;
    std::swap(perm[col], perm[pivot]);
    const double head = A[perm[col]][col];
    if (std::abs(head) < 1e-12 * scale) return false;
    for (int r = col + 1; r < 3; ++r) {
      const double factor = A[perm[r]][col] / head;
      for (int c = col; c < 3; ++c) A[perm[r]][c] -= factor * A[perm[col]][c];
      rhs[perm[r]] -= factor * rhs[perm[col]];
    }
  }
  for (int col = 2; col >= 0; --col) {
    double sum = rhs[perm[col]];
    for (int c = col + 1; c < 3; ++c) sum -= A[perm[col]][c] * out[c];
    out[col] = sum / A[perm[col]][col];
  }
  return true;
}

}  // namespace

TransformationFit fit_transformation(const std::vector<Event>& events, const ObserverFrame& A,
                                     const ObserverFrame& B) {
  validate(A);
  validate(B);
  if (A.c_s != B.c_s) throw ConfigError("frames must share the signal speed");
  if (A.epsilon != B.epsilon)
    throw ConfigError("frames must share the simultaneity parameter");
  if (events.size() < 3) throw ConfigError("affine fit needs at least 3 events");

  const double c = A.c_s;
  const std::size_t n = events.size();
  std::vector<double> ya0(n), ya1(n), yb0(n), yb1(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RadarReading ra = radar_coordinates(events[i], A);
    const RadarReading rb = radar_coordinates(events[i], B);
    ya0[i] = c * ra.tau;
    ya1[i] = ra.xi;
    yb0[i] = c * rb.tau;
    yb1[i] = rb.xi;
  }

  // Two shared-design least-squares lines: each output coordinate is an
  // affine function of A's chart, solved via 3x3 normal equations.
  double gram[3][3] = {{0.0}};
  double rhs0[3] = {0.0};
  double rhs1[3] = {0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double row[3] = {ya0[i], ya1[i], 1.0};
    for (int r = 0; r < 3; ++r) {
      for (int col = 0; col < 3; ++col) gram[r][col] += row[r] * row[col];
      rhs0[r] += row[r] * yb0[i];
      rhs1[r] += row[r] * yb1[i];
    }
  }
  double gram_copy[3][3];
  std::copy(&gram[0][0], &gram[0][0] + 9, &gram_copy[0][0]);
  double top[3];
  double bottom[3];
  if (!solve3(gram, rhs0, top) || !solve3(gram_copy, rhs1, bottom))
    throw DegenerateFitError("events are collinear in the radar chart");

  TransformationFit fit;
  fit.map.m[0] = top[0];
  fit.map.m[1] = top[1];
  fit.map.b[0] = top[2];
  fit.map.m[2] = bottom[0];
  fit.map.m[3] = bottom[1];
  fit.map.b[1] = bottom[2];
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r0 = yb0[i] - (top[0] * ya0[i] + top[1] * ya1[i] + top[2]);
    const double r1 = yb1[i] - (bottom[0] * ya0[i] + bottom[1] * ya1[i] + bottom[2]);
    sq += r0 * r0 + r1 * r1;
  }
  fit.residual_rms = std::sqrt(sq / static_cast<double>(2 * n));
  fit.velocity = boost_velocity(fit.map, c);
  return fit;
}

}  // namespace framelab::frames
