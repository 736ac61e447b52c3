#pragma once

// Stability study of periodic bouncing on a fixed parabola, using the
// post-impact states as a Poincare section.

#include <iosfwd>
#include <vector>

#include "impact_lab/hybrid_executor.hpp"

namespace impact_lab {

struct CycleOptions {
  ImpactLaw law = ImpactLaw::Rolling;
  int max_period = 8;
  double convergence_tol = 1e-8;
  int ratio_window = 10;     ///< returns used by the median-ratio estimate
  double fd_step = 1e-6;     ///< central-difference step of the return-map Jacobian
  ExecutorConfig executor;
};

struct CycleReport {
  bool converged = false;
  int period = 1;             ///< impacts per return of the detected cycle
  int converged_at = -1;      ///< first impact index whose return distance < tol
  std::vector<BallState> section;        ///< every post-impact state
  std::vector<BallState> period_states;  ///< last `period` section states
  std::vector<double> distances;         ///< d_k between successive returns
  std::vector<double> contraction_ratios;  ///< d_{k+1} / d_k
  double spectral_radius_estimate = 0.0;   ///< median of the last ratios
  double jacobian_spectral_radius = 0.0;   ///< from the finite-difference return map
  double mean_contraction = 0.0;           ///< geometric mean of all ratios
  HybridTrajectory trajectory;
};

/// |dx| + |dvx| + |dvy| + R |domega|; theta is ignored.
double section_distance(const BallState& a, const BallState& b, const BallParams& p);

/// Drops the disk onto Parabola{alpha} for n_impacts impacts and grades the
/// approach to a periodic orbit. The period is the smallest p <= max_period
/// whose return distances shrink by three orders of magnitude over the run
/// (1 when none do).
///
/// The Jacobian is taken in the coordinates (x, vx, omega) on the energy level
/// of the last section state; y follows from the guard and vy from the energy.
CycleReport limit_cycle_study(double alpha, const BallState& s0, const BallParams& p,
                              int n_impacts, const CycleOptions& opts = {});

/// Columns impact_index,t,x,y,theta,vx,vy,omega,return_distance. The distance is
/// empty for the first `period` rows.
void write_cycle_csv(std::ostream& os, const CycleReport& report, const BallParams& p);

}  // namespace impact_lab
