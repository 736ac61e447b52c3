#pragma once

// Reset maps for the disk striking a surface.
//
// Every law is an instance of the jump conditions
//
//   M (v+ - v-)   = eps * d_x h + lambda * eta
//   E- - E+       = eps * dh/dt
//   eta(v+)       = 0                       (rolling only)
//
// with M = diag(m, m, I), d_x h = (hx, hy, 0) and the rolling-without-slipping
// one-form eta = R dtheta + cos(phi) dx + sin(phi) dy, phi being the local
// contact angle. The slippery law drops eta and lambda.

#include <array>
#include <stdexcept>

#include "impact_lab/core_model.hpp"

namespace impact_lab {

/// Raised when a reset is requested for a state that is not an admissible
/// impact, or when no departing post-impact state exists.
class ImpactError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ImpactLaw { Rolling, Slippery };

struct ImpactOutcome {
  BallState post;
  double epsilon = 0.0;       ///< normal multiplier [kg m/s]
  double lambda = 0.0;        ///< constraint multiplier [kg m/s]
  double energy_delta = 0.0;  ///< E+ - E- [J]
};

/// Tolerance on |h| for a state to count as lying on the guard.
inline constexpr double kGuardTolerance = 1e-9;

/// Specular reflection of the metric-normal velocity component. Requires a
/// stationary surface, |h| <= kGuardTolerance and positive guard rate.
ImpactOutcome slippery_reset(const BallState& s, const Surface& surf, const BallParams& p);

/// The same reflection without any admissibility checks. Applying it twice
/// returns the original velocity.
ImpactOutcome slippery_reflect(const BallState& s, const Surface& surf, const BallParams& p);

/// Closed-form rolling reset against a level table (table.u must be 0). The
/// table may be moving: w = du * x + dv enters the normal momentum.
ImpactOutcome rolling_reset_flat(const BallState& s, const TableConfig& table,
                                 const BallParams& p);

/// Rolling reset against a stationary plane or parabola, obtained by rotating
/// into the contact frame, applying the level-table law and rotating back.
ImpactOutcome rolling_reset(const BallState& s, const Surface& surf, const BallParams& p);

/// Direct solve of the jump conditions in the unknowns (v+, eps, lambda).
/// Handles moving tilted tables. The departing branch (eps < 0, post guard
/// rate < 0) is returned.
ImpactOutcome impact_equation_solve(const BallState& s, const Surface& surf,
                                    const BallParams& p,
                                    ImpactLaw law = ImpactLaw::Rolling);

/// Picks the cheapest exact path for `law` on `surf`.
ImpactOutcome apply_impact(const BallState& s, const Surface& surf, const BallParams& p,
                           ImpactLaw law);

/// Residuals of the five jump conditions, in order: x momentum, y momentum,
/// angular momentum, energy, post-impact constraint. The constraint residual is
/// reported as zero for the slippery law.
std::array<double, 5> impact_residuals(const BallState& pre, const ImpactOutcome& out,
                                       const Surface& surf, const BallParams& p,
                                       ImpactLaw law = ImpactLaw::Rolling);

/// p_theta - R (p_x cos phi + p_y sin phi): unchanged by any rolling reset.
double contact_angular_momentum(const BallState& s, double phi, const BallParams& p);

}  // namespace impact_lab
