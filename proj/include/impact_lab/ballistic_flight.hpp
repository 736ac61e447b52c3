#pragma once

#include <optional>

#include "impact_lab/core_model.hpp"

namespace impact_lab {

/// Free flight between two impacts. end == propagate(start, duration).
struct FlightArc {
  BallState start;
  double duration = 0.0;
  BallState end;
};

/// Exact ballistic flow: x, theta advance linearly, y falls under gravity.
BallState propagate(const BallState& s, double dt, const BallParams& p);

/// Earliest t* > t_min at which the disk reaches the surface with positive
/// guard rate, or nullopt if the flight never strikes it again.
///
/// The guard composed with the ballistic arc is a quadratic
/// a t^2 + b t + c; the admissible crossing is the root where
/// 2 a t + b = +sqrt(b^2 - 4ac), so at most one root qualifies.
std::optional<double> time_to_impact(const BallState& s, const Surface& surf,
                                     const BallParams& p, double t_min = 0.0);

/// Coefficients (a, b, c) of h(propagate(s, t)) = a t^2 + b t + c.
struct GuardQuadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

GuardQuadratic guard_along_flight(const BallState& s, const Surface& surf,
                                  const BallParams& p);

}  // namespace impact_lab
