#include "impact_lab/limit_cycle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "impact_lab/number_format.hpp"

namespace impact_lab {

double section_distance(const BallState& a, const BallState& b, const BallParams& p) {
  return std::abs(a.x - b.x) + std::abs(a.vx - b.vx) + std::abs(a.vy - b.vy) +
         p.R * std::abs(a.omega - b.omega);
}

namespace {

constexpr double kDistanceFloor = 1e-12;

std::vector<double> return_distances(const std::vector<BallState>& sec, int period,
                                     const BallParams& p) {
  // Returns aligned so the last section state is the final return.
  std::vector<double> d;
  const int n = static_cast<int>(sec.size());
  int first = (n - 1) % period;
  for (int k = first; k + period < n; k += period) {
    d.push_back(section_distance(sec[k], sec[k + period], p));
  }
  return d;
}

bool shrinks(const std::vector<double>& d) {
  if (d.empty()) return false;
  const double hi = *std::max_element(d.begin(), d.end());
  const double lo = *std::min_element(d.begin(), d.end());
  // Already sitting on the orbit to round-off.
  if (hi <= kDistanceFloor) return true;
  return lo <= 1e-3 * hi;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

struct ReturnMap {
  double alpha;
  int period;
  double energy_level;
  double vy_sign;
  const BallParams& p;
  const CycleOptions& opts;

  // Rebuilds a post-impact state on the guard with the fixed energy.
  BallState lift(const Eigen::Vector3d& z) const {
    BallState s;
    s.x = z[0];
    s.vx = z[1];
    s.omega = z[2];
    s.y = alpha * s.x * s.x + p.R;
    const double kinetic_y = energy_level - p.m * p.g * s.y - 0.5 * p.m * s.vx * s.vx -
                             0.5 * p.I * s.omega * s.omega;
    if (kinetic_y < 0.0) throw std::domain_error("return map: energy level unreachable");
    s.vy = vy_sign * std::sqrt(2.0 * kinetic_y / p.m);
    return s;
  }

  Eigen::Vector3d operator()(const Eigen::Vector3d& z) const {
    const Surface surf = Parabola{alpha};
    BallState s = lift(z);
    for (int k = 0; k < period; ++k) {
      const auto hit = time_to_impact(s, surf, p, opts.executor.t_min);
      if (!hit) throw std::domain_error("return map: no further impact");
      s = apply_impact(propagate(s, *hit, p), surf, p, opts.law).post;
    }
    return {s.x, s.vx, s.omega};
  }
};

double jacobian_radius(const ReturnMap& map, const BallState& at, double h) {
  const Eigen::Vector3d z0(at.x, at.vx, at.omega);
  Eigen::Matrix3d J;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e[i] = h;
    J.col(i) = (map(z0 + e) - map(z0 - e)) / (2.0 * h);
  }
  const Eigen::EigenSolver<Eigen::Matrix3d> eig(J, false);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

CycleReport limit_cycle_study(double alpha, const BallState& s0, const BallParams& p,
                              int n_impacts, const CycleOptions& opts) {
  if (!(alpha > 0.0)) throw std::invalid_argument("limit_cycle_study: alpha must be positive");
  if (n_impacts < 20) throw std::invalid_argument("limit_cycle_study: need at least 20 impacts");
  const Surface surf = Parabola{alpha};
  if (!(guard_value(s0, surf, p) < 0.0)) {
    throw std::invalid_argument("limit_cycle_study: start must be above the parabola");
  }

  CycleReport rep;
  ExecutorConfig exec = opts.executor;
  exec.law = opts.law;
  rep.trajectory = run_surface(s0, surf, p, std::numeric_limits<double>::infinity(),
                               n_impacts, exec);
  for (const ImpactEvent& ev : rep.trajectory.events) rep.section.push_back(ev.outcome.post);
  const auto& sec = rep.section;
  if (sec.size() < 2) return rep;

  rep.period = 1;
  for (int period = 1; period <= opts.max_period; ++period) {
    if (shrinks(return_distances(sec, period, p))) {
      rep.period = period;
      break;
    }
  }
  for (std::size_t k = 0; k + rep.period < sec.size(); ++k) {
    if (section_distance(sec[k], sec[k + rep.period], p) < opts.convergence_tol) {
      rep.converged = true;
      rep.converged_at = static_cast<int>(k + rep.period);
      break;
    }
  }

  rep.distances = return_distances(sec, rep.period, p);
  double log_sum = 0.0;
  for (std::size_t k = 0; k + 1 < rep.distances.size(); ++k) {
    const double a = rep.distances[k];
    const double b = rep.distances[k + 1];
    if (a > kDistanceFloor && b > kDistanceFloor) {
      rep.contraction_ratios.push_back(b / a);
      log_sum += std::log(b / a);
    }
  }
  if (!rep.contraction_ratios.empty()) {
    const std::size_t w = std::min<std::size_t>(opts.ratio_window, rep.contraction_ratios.size());
    rep.spectral_radius_estimate = median(
        std::vector<double>(rep.contraction_ratios.end() - static_cast<std::ptrdiff_t>(w),
                            rep.contraction_ratios.end()));
    rep.mean_contraction =
        std::exp(log_sum / static_cast<double>(rep.contraction_ratios.size()));
  }
  rep.period_states.assign(sec.end() - std::min<std::ptrdiff_t>(rep.period, sec.size()),
                           sec.end());

  const BallState& last = sec.back();
  const ReturnMap map{alpha, rep.period, energy(last, p).total, last.vy < 0.0 ? -1.0 : 1.0,
                      p, opts};
  try {
    rep.jacobian_spectral_radius = jacobian_radius(map, last, opts.fd_step);
  } catch (const std::exception&) {
    rep.jacobian_spectral_radius = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

void write_cycle_csv(std::ostream& os, const CycleReport& report, const BallParams& p) {
  os << "impact_index,t,x,y,theta,vx,vy,omega,return_distance\n";
  const auto& sec = report.section;
  for (std::size_t k = 0; k < sec.size(); ++k) {
    const BallState& s = sec[k];
    os << k << ',' << format_double(s.t) << ',' << format_double(s.x) << ','
       << format_double(s.y) << ',' << format_double(s.theta) << ',' << format_double(s.vx)
       << ',' << format_double(s.vy) << ',' << format_double(s.omega) << ',';
    if (k >= static_cast<std::size_t>(report.period)) {
      os << format_double(section_distance(sec[k - report.period], s, p));
    }
    os << '\n';
  }
}

}  // namespace impact_lab
