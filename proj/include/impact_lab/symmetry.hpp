#pragma once

// Momentum map and mechanical connection for the S^1 action
// theta -> theta + s on the planar disk.

#include <iosfwd>
#include <vector>

#include "impact_lab/hybrid_executor.hpp"

namespace impact_lab {

/// J = I * omega.
double momentum_map(const BallState& s, const BallParams& p);

/// Metric pairing of the generator d/dtheta with itself; the scalar I.
double locked_inertia(const BallParams& p);

/// A = J / locked_inertia = omega.
double mechanical_connection(const BallState& s, const BallParams& p);

struct SymmetryEventRecord {
  double t = 0.0;
  double J_pre = 0.0;
  double J_post = 0.0;
  double A_pre = 0.0;
  double A_post = 0.0;
};

/// J_series[0] and A_series[0] are taken at the start of the trajectory; entry
/// k + 1 right after event k.
struct SymmetryReport {
  std::vector<double> J_series;
  std::vector<double> A_series;
  std::vector<SymmetryEventRecord> events;
  double max_jump_J = 0.0;
  double max_jump_A = 0.0;
};

SymmetryReport audit_trajectory(const HybridTrajectory& traj, const BallParams& p);

/// Columns: event_index,t,J_pre,J_post,A_pre,A_post.
void write_symmetry_csv(std::ostream& os, const SymmetryReport& report);

}  // namespace impact_lab
