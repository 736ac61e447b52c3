#include "impact_lab/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace impact_lab {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  SplitMix64 first(a);
  SplitMix64 second(first.next() ^ (b + 0x632be59bd9b4e019ULL));
  return second.next();
}

double error_function(const HybridTrajectory& traj, const TargetSpec& target,
                      const ErrorWeights& w) {
  if (!terminated_normally(traj.termination)) return kAbnormalPenalty;
  const BallState& start = traj.arcs.empty() ? traj.terminal : traj.arcs.front().start;
  const BallState& end = traj.terminal;

  auto sq = [](double v) { return v * v; };
  const std::array<double, 4> q{
      sq(end.x - target.x0),
      sq(end.y - target.y0),
      sq((end.theta - start.theta) - target.theta_f),
      sq((traj.terminal_time - start.t) - target.T),
  };
  double e = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) e += w.A[i] * q[i] * q[i];
  return e;
}

BallState start_state(const TargetSpec& target) {
  BallState s;
  s.x = target.x0;
  s.y = target.y0;
  s.theta = target.theta0;
  return s;
}

ControlSchedule schedule_from_controls(std::span<const double> controls) {
  if (controls.size() % 2 != 0) {
    throw std::invalid_argument("control vector must hold (u, v) pairs");
  }
  ControlSchedule sched;
  for (std::size_t i = 0; i < controls.size(); i += 2) {
    sched.entries.push_back(TableConfig{controls[i], controls[i + 1], 0.0, 0.0});
  }
  sched.max_bounces = static_cast<int>(sched.entries.size());
  return sched;
}

TerminalMode terminal_mode_for(const TargetSpec& target, const SolverConfig& cfg) {
  return cfg.terminal_mode == TerminalMode::Kind::Apex ? TerminalMode::apex()
                                                       : TerminalMode::fixed_time(target.T);
}

HybridTrajectory simulate_controls(std::span<const double> controls, const TargetSpec& target,
                                   const BallParams& p, const SolverConfig& cfg) {
  return run_schedule(start_state(target), schedule_from_controls(controls), p,
                      terminal_mode_for(target, cfg), cfg.executor);
}

double evaluate_controls(std::span<const double> controls, const TargetSpec& target,
                         const BallParams& p, const SolverConfig& cfg) {
  return error_function(simulate_controls(controls, target, p, cfg), target, cfg.weights);
}

namespace {

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  Box(int n, const SolverConfig& cfg) {
    for (int i = 0; i < n; ++i) {
      lo.push_back(cfg.angle_min);
      hi.push_back(cfg.angle_max);
      lo.push_back(cfg.height_min);
      hi.push_back(cfg.height_max);
    }
  }

  void clamp(std::vector<double>& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
  }
};

struct Vertex {
  std::vector<double> x;
  double f = 0.0;
};

}  // namespace

RefineResult refine(std::vector<double> initial, int n, const TargetSpec& target,
                    const BallParams& p, const SolverConfig& cfg) {
  if (static_cast<int>(initial.size()) != 2 * n) {
    throw std::invalid_argument("refine: control vector length must be 2n");
  }
  const Box box(n, cfg);
  box.clamp(initial);
  auto f = [&](const std::vector<double>& x) { return evaluate_controls(x, target, p, cfg); };

  RefineResult result{initial, f(initial), 0};
  const std::size_t dim = initial.size();
  if (dim == 0 || cfg.max_iters <= 0 || result.error == 0.0) return result;

  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  std::vector<Vertex> simplex;
  simplex.push_back({initial, result.error});
  for (std::size_t i = 0; i < dim; ++i) {
    Vertex v{initial, 0.0};
    const double step = cfg.simplex_scale * (box.hi[i] - box.lo[i]);
    v.x[i] = (v.x[i] + step <= box.hi[i]) ? v.x[i] + step : v.x[i] - step;
    box.clamp(v.x);
    v.f = f(v.x);
    simplex.push_back(std::move(v));
  }

  auto combine = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
    // a + t (b - a), clamped to the box.
    std::vector<double> r(dim);
    for (std::size_t i = 0; i < dim; ++i) r[i] = a[i] + t * (b[i] - a[i]);
    box.clamp(r);
    return r;
  };
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

  int iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    std::stable_sort(simplex.begin(), simplex.end(), by_value);

    double diameter = 0.0;
    for (std::size_t k = 1; k < simplex.size(); ++k) {
      for (std::size_t i = 0; i < dim; ++i) {
        diameter = std::max(diameter, std::abs(simplex[k].x[i] - simplex[0].x[i]));
      }
    }
    if (diameter < cfg.simplex_tol || simplex[0].f == 0.0) break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[k].x[i] / dim;
    }
    Vertex& worst = simplex.back();
    const double second_worst = simplex[dim - 1].f;

    Vertex reflected{combine(centroid, worst.x, -kReflect), 0.0};
    reflected.f = f(reflected.x);

    if (reflected.f < simplex[0].f) {
      Vertex expanded{combine(centroid, reflected.x, kExpand), 0.0};
      expanded.f = f(expanded.x);
      worst = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
      continue;
    }
    if (reflected.f < second_worst) {
      worst = std::move(reflected);
      continue;
    }
    if (reflected.f < worst.f) {
      Vertex outside{combine(centroid, reflected.x, kContract), 0.0};
      outside.f = f(outside.x);
      if (outside.f <= reflected.f) {
        worst = std::move(outside);
        continue;
      }
    } else {
      Vertex inside{combine(centroid, worst.x, kContract), 0.0};
      inside.f = f(inside.x);
      if (inside.f < worst.f) {
        worst = std::move(inside);
        continue;
      }
    }
    for (std::size_t k = 1; k < simplex.size(); ++k) {
      simplex[k].x = combine(simplex[0].x, simplex[k].x, kShrink);
      simplex[k].f = f(simplex[k].x);
    }
  }

  const auto best = std::min_element(simplex.begin(), simplex.end(), by_value);
  if (best->f < result.error) {
    result.controls = best->x;
    result.error = best->f;
  }
  result.iterations = iter;
  return result;
}

std::vector<double> initial_guess(SplitMix64& rng, int n, const TargetSpec& target,
                                  const BallParams& p, const SolverConfig& cfg) {
  std::vector<double> guess;
  for (int k = 0; k < n; ++k) {
    // Redraw a placement the disk never reaches. The final placement must also
    // end the run normally. The last draw is kept if none of them works.
    const bool last = k + 1 == n;
    for (int draw = 0; draw < kMaxPlacementDraws; ++draw) {
      guess.resize(2 * static_cast<std::size_t>(k));
      guess.push_back(rng.uniform(cfg.angle_min, cfg.angle_max));
      guess.push_back(rng.uniform(cfg.height_min, cfg.height_max));
      const HybridTrajectory traj = simulate_controls(guess, target, p, cfg);
      const bool reached = traj.bounce_count == k + 1 &&
                           traj.termination != Termination::InfeasiblePlacement;
      if (last ? terminated_normally(traj.termination) : reached) break;
    }
  }
  return guess;
}

SolveReport solve_report(const TargetSpec& target, const BallParams& p,
                         const SolverConfig& cfg, std::uint64_t seed) {
  if (cfg.restarts < 1 || !(cfg.epsilon > 0.0)) {
    throw std::invalid_argument("solve: need restarts >= 1 and epsilon > 0");
  }
  SolveReport report;
  const int max_n = std::min(cfg.max_bounces, cfg.executor.max_bounce_cap);
  for (int n = 0; n <= max_n; ++n) {
    std::optional<RefineResult> best;
    // Every restart of the zero-bounce problem is the same (empty) guess.
    const int restarts = n == 0 ? 1 : cfg.restarts;
    for (int r = 0; r < restarts; ++r) {
      SplitMix64 rng(mix_seed(mix_seed(seed, static_cast<std::uint64_t>(n)),
                              static_cast<std::uint64_t>(r)));
      RefineResult candidate = refine(initial_guess(rng, n, target, p, cfg), n, target, p, cfg);
      ++report.refinements;
      if (!best || candidate.error < best->error) best = std::move(candidate);
    }
    report.best_error = std::min(report.best_error, best->error);
    if (best->error <= cfg.epsilon) {
      const HybridTrajectory traj = simulate_controls(best->controls, target, p, cfg);
      ShootingResult res;
      res.schedule = schedule_from_controls(best->controls);
      res.controls = best->controls;
      res.bounce_count = n;
      res.error = best->error;
      res.terminal = traj.terminal;
      res.terminal_time = traj.terminal_time;
      res.seed = seed;
      report.accepted = std::move(res);
      return report;
    }
  }
  return report;
}

std::optional<ShootingResult> solve(const TargetSpec& target, const BallParams& p,
                                    const SolverConfig& cfg, std::uint64_t seed) {
  return solve_report(target, p, cfg, seed).accepted;
}

}  // namespace impact_lab
