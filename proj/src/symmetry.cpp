#include "impact_lab/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "impact_lab/number_format.hpp"

namespace impact_lab {

double momentum_map(const BallState& s, const BallParams& p) { return p.I * s.omega; }

double locked_inertia(const BallParams& p) { return p.I; }

double mechanical_connection(const BallState& s, const BallParams& p) {
  return momentum_map(s, p) / locked_inertia(p);
}

SymmetryReport audit_trajectory(const HybridTrajectory& traj, const BallParams& p) {
  SymmetryReport report;
  const BallState& start = traj.arcs.empty() ? traj.terminal : traj.arcs.front().start;
  report.J_series.push_back(momentum_map(start, p));
  report.A_series.push_back(mechanical_connection(start, p));

  for (const ImpactEvent& ev : traj.events) {
    SymmetryEventRecord rec;
    rec.t = ev.pre.t;
    rec.J_pre = momentum_map(ev.pre, p);
    rec.J_post = momentum_map(ev.outcome.post, p);
    rec.A_pre = mechanical_connection(ev.pre, p);
    rec.A_post = mechanical_connection(ev.outcome.post, p);
    report.max_jump_J = std::max(report.max_jump_J, std::abs(rec.J_post - rec.J_pre));
    report.max_jump_A = std::max(report.max_jump_A, std::abs(rec.A_post - rec.A_pre));
    report.J_series.push_back(rec.J_post);
    report.A_series.push_back(rec.A_post);
    report.events.push_back(rec);
  }
  return report;
}

void write_symmetry_csv(std::ostream& os, const SymmetryReport& report) {
  os << "event_index,t,J_pre,J_post,A_pre,A_post\n";
  for (std::size_t k = 0; k < report.events.size(); ++k) {
    const SymmetryEventRecord& r = report.events[k];
    os << k << ',' << format_double(r.t) << ',' << format_double(r.J_pre) << ','
       << format_double(r.J_post) << ',' << format_double(r.A_pre) << ','
       << format_double(r.A_post) << '\n';
  }
}

}  // namespace impact_lab
