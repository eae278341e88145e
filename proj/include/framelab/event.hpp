#pragma once

namespace framelab::frames {

// A point of the medium's coordinate frame.
struct Event {
  double t = 0.0;
  double x = 0.0;
};

// Squared interval c_s^2 (dt)^2 - (dx)^2 at signal speed c_s.
double interval(const Event& e1, const Event& e2, double c_s);

}  // namespace framelab::frames
