#pragma once

// Domain types for a rigid disk moving in a vertical plane and striking a
// tilted/raised table or a fixed parabolic surface.

#include <variant>

namespace impact_lab {

/// Physical constants of the disk. Defaults describe a uniform disk:
/// I = m R^2 / 2.
struct BallParams {
  double m = 1.0;            ///< mass [kg]
  double I = 0.5 * 0.1 * 0.1; ///< moment of inertia [kg m^2]
  double R = 0.1;            ///< radius [m]
  double g = 9.81;           ///< gravitational acceleration [m/s^2]

  /// Throws std::invalid_argument unless every constant is positive and finite.
  void validate() const;
};

/// A point of the tangent bundle of SE(2) plus the absolute time.
/// theta is never wrapped to [0, 2pi).
struct BallState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;
  double t = 0.0;

  double px(const BallParams& p) const { return p.m * vx; }
  double py(const BallParams& p) const { return p.m * vy; }
  double ptheta(const BallParams& p) const { return p.I * omega; }

  bool finite() const;

  friend bool operator==(const BallState&, const BallState&) = default;
};

/// Table placement: tilt u, height v and their rates at the moment of impact.
struct TableConfig {
  double u = 0.0;
  double v = 0.0;
  double du = 0.0;
  double dv = 0.0;

  bool stationary() const { return du == 0.0 && dv == 0.0; }

  friend bool operator==(const TableConfig&, const TableConfig&) = default;
};

struct Plane {
  TableConfig table;
};

/// y = alpha x^2. Contact uses the vertical-offset model h = alpha x^2 - y + R,
/// with the contact tangent taken at the centre's abscissa.
struct Parabola {
  double alpha = 0.5;
};

using Surface = std::variant<Plane, Parabola>;

struct EnergyBreakdown {
  double kinetic = 0.0;
  double potential = 0.0;
  double total = 0.0;
};

/// Gradient of the guard with respect to (x, y); the theta component is zero.
struct GuardGradient {
  double hx = 0.0;
  double hy = 0.0;
};

/// Signed guard value. Negative: the disk is strictly above the surface.
double guard_value(const BallState& s, const Surface& surf, const BallParams& p);

/// Time derivative of the guard along the current velocity, including the
/// table motion (du, dv). Impacts are admissible only when this is positive.
double guard_rate(const BallState& s, const Surface& surf, const BallParams& p);

/// Partial derivative of the guard in time at fixed position: the table's
/// contribution (x cos u + y sin u) du + dv. Zero for the parabola.
double guard_time_rate(const BallState& s, const Surface& surf);

GuardGradient guard_gradient(const BallState& s, const Surface& surf);

EnergyBreakdown energy(const BallState& s, const BallParams& p);

/// Rotates position and velocity by -phi about the origin. theta and omega are
/// left unchanged.
BallState rotate_frame(const BallState& s, double phi);

/// Angle phi such that rotate_frame(., phi) makes the local surface tangent
/// horizontal with outward normal +y.
double local_contact_frame(const BallState& s, const Surface& surf);

bool is_stationary(const Surface& surf);

}  // namespace impact_lab
