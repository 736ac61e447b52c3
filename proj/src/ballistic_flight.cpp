#include "impact_lab/ballistic_flight.hpp"

#include <cmath>

namespace impact_lab {

BallState propagate(const BallState& s, double dt, const BallParams& p) {
  BallState r = s;
  r.x = s.x + s.vx * dt;
  r.y = s.y + s.vy * dt - 0.5 * p.g * dt * dt;
  r.theta = s.theta + s.omega * dt;
  r.vy = s.vy - p.g * dt;
  r.t = s.t + dt;
  return r;
}

GuardQuadratic guard_along_flight(const BallState& s, const Surface& surf,
                                  const BallParams& p) {
  GuardQuadratic q;
  q.c = guard_value(s, surf, p);
  if (const auto* pl = std::get_if<Plane>(&surf)) {
    const double u = pl->table.u;
    q.a = 0.5 * p.g * std::cos(u);
    q.b = s.vx * std::sin(u) - s.vy * std::cos(u);
  } else {
    const double alpha = std::get<Parabola>(surf).alpha;
    q.a = alpha * s.vx * s.vx + 0.5 * p.g;
    q.b = 2.0 * alpha * s.x * s.vx - s.vy;
  }
  return q;
}

std::optional<double> time_to_impact(const BallState& s, const Surface& surf,
                                     const BallParams& p, double t_min) {
  const auto [a, b, c] = guard_along_flight(s, surf, p);

  double root = 0.0;
  if (a == 0.0) {
    // Linear guard: crossing rate is b itself.
    if (!(b > 0.0)) return std::nullopt;
    root = -c / b;
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (!(disc > 0.0)) return std::nullopt;
    const double sq = std::sqrt(disc);
    // root = (-b + sq) / (2a), rewritten to avoid cancellation when b >= 0.
    root = (b < 0.0) ? (-b + sq) / (2.0 * a) : (2.0 * c) / (-b - sq);
  }
  if (!std::isfinite(root) || !(root > t_min)) return std::nullopt;
  return root;
}

}  // namespace impact_lab
