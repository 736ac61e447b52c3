#include "impact_lab/hybrid_executor.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "impact_lab/number_format.hpp"

namespace impact_lab {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::ApexReached: return "apex_reached";
    case Termination::TimeReached: return "time_reached";
    case Termination::NoMoreImpacts: return "no_more_impacts";
    case Termination::ZenoGuard: return "zeno_guard";
    case Termination::InfeasiblePlacement: return "infeasible_placement";
    case Termination::BounceLimit: return "bounce_limit";
  }
  return "unknown";
}

bool terminated_normally(Termination t) {
  return t == Termination::ApexReached || t == Termination::TimeReached;
}

namespace {

// Builds the trajectory incrementally while keeping arcs/events interleaved.
class TrajectoryBuilder {
 public:
  TrajectoryBuilder(const BallState& s0, const BallParams& p) : current_(s0), p_(p) {}

  const BallState& current() const { return current_; }

  // Flies for dt and records the impact at the end of the arc.
  void impact(double dt, const ImpactOutcome& outcome, const Surface& surf) {
    const BallState pre = propagate(current_, dt, p_);
    traj_.arcs.push_back({current_, dt, pre});
    traj_.events.push_back({pre, outcome, surf});
    ++traj_.bounce_count;
    current_ = outcome.post;
  }

  HybridTrajectory finish(double dt, Termination why) {
    const BallState end = propagate(current_, dt, p_);
    traj_.arcs.push_back({current_, dt, end});
    traj_.terminal = end;
    traj_.terminal_time = end.t;
    traj_.termination = why;
    return std::move(traj_);
  }

 private:
  HybridTrajectory traj_;
  BallState current_;
  const BallParams& p_;
};

class ZenoCounter {
 public:
  explicit ZenoCounter(const ExecutorConfig& cfg) : cfg_(cfg) {}

  // Returns true once too many consecutive short flights have been seen.
  bool record(double flight_time) {
    violations_ = flight_time < cfg_.zeno_interval ? violations_ + 1 : 0;
    return violations_ >= cfg_.zeno_max_violations;
  }

 private:
  const ExecutorConfig& cfg_;
  int violations_ = 0;
};

double apex_delay(const BallState& s, const BallParams& p) {
  return std::max(0.0, s.vy / p.g);
}

// Strictly above the table, or resting on it (a table placed where the disk just
// bounced) while moving away.
bool clear_of(const BallState& s, const Surface& surf, const BallParams& p) {
  const double h = guard_value(s, surf, p);
  if (h < 0.0) return true;
  return h <= kGuardTolerance && guard_rate(s, surf, p) < 0.0;
}

}  // namespace

HybridTrajectory run_schedule(const BallState& s0, const ControlSchedule& sched,
                              const BallParams& p, TerminalMode mode,
                              const ExecutorConfig& cfg) {
  if (sched.max_bounces < 0 || sched.max_bounces > cfg.max_bounce_cap) {
    throw std::invalid_argument("run_schedule: max_bounces outside [0, cap]");
  }
  if (static_cast<int>(sched.entries.size()) < sched.max_bounces) {
    throw std::invalid_argument("run_schedule: fewer schedule entries than max_bounces");
  }
  const bool apex = mode.kind == TerminalMode::Kind::Apex;
  TrajectoryBuilder b(s0, p);

  auto finish_free = [&](Termination normal) {
    const BallState& s = b.current();
    const double dt = apex ? apex_delay(s, p) : std::max(0.0, mode.T - s.t);
    return b.finish(dt, normal);
  };
  const Termination normal = apex ? Termination::ApexReached : Termination::TimeReached;

  if (sched.max_bounces == 0) return finish_free(normal);

  Surface surf = Plane{sched.entries[0]};
  if (!(guard_value(s0, surf, p) < 0.0)) {
    return b.finish(0.0, Termination::InfeasiblePlacement);
  }

  ZenoCounter zeno(cfg);
  int bounces = 0;
  while (true) {
    const BallState& s = b.current();
    const std::optional<double> hit = time_to_impact(s, surf, p, cfg.t_min);

    if (bounces == sched.max_bounces) {
      // Budget spent: any further contact with the last table is an excess impact.
      if (apex) {
        const double dt = apex_delay(s, p);
        if (hit && *hit <= dt) return b.finish(*hit, Termination::ZenoGuard);
        return b.finish(dt, Termination::ApexReached);
      }
      if (hit && s.t + *hit <= mode.T) return b.finish(*hit, Termination::ZenoGuard);
      return b.finish(std::max(0.0, mode.T - s.t), Termination::TimeReached);
    }

    if (!hit) return finish_free(Termination::NoMoreImpacts);
    if (!apex && s.t + *hit > mode.T) {
      return b.finish(std::max(0.0, mode.T - s.t), Termination::TimeReached);
    }
    if (zeno.record(*hit)) return b.finish(*hit, Termination::ZenoGuard);

    const BallState pre = propagate(s, *hit, p);
    ImpactOutcome outcome;
    try {
      outcome = apply_impact(pre, surf, p, cfg.law);
    } catch (const ImpactError&) {
      return b.finish(*hit, Termination::InfeasiblePlacement);
    }
    b.impact(*hit, outcome, surf);
    ++bounces;

    if (bounces < sched.max_bounces) {
      surf = Plane{sched.entries[static_cast<std::size_t>(bounces)]};
      if (!clear_of(b.current(), surf, p)) {
        return b.finish(0.0, Termination::InfeasiblePlacement);
      }
    }
  }
}

HybridTrajectory run_surface(const BallState& s0, const Surface& surf, const BallParams& p,
                             double T, int max_bounces, const ExecutorConfig& cfg) {
  TrajectoryBuilder b(s0, p);
  if (!(guard_value(s0, surf, p) < 0.0)) {
    return b.finish(0.0, Termination::InfeasiblePlacement);
  }
  ZenoCounter zeno(cfg);
  int bounces = 0;
  while (true) {
    const BallState& s = b.current();
    const std::optional<double> hit = time_to_impact(s, surf, p, cfg.t_min);
    if (!hit) {
      const double dt = std::isfinite(T) ? std::max(0.0, T - s.t) : 0.0;
      return b.finish(dt, Termination::NoMoreImpacts);
    }
    if (s.t + *hit > T) return b.finish(std::max(0.0, T - s.t), Termination::TimeReached);
    if (zeno.record(*hit)) return b.finish(*hit, Termination::ZenoGuard);

    const BallState pre = propagate(s, *hit, p);
    ImpactOutcome outcome;
    try {
      outcome = apply_impact(pre, surf, p, cfg.law);
    } catch (const ImpactError&) {
      return b.finish(*hit, Termination::InfeasiblePlacement);
    }
    b.impact(*hit, outcome, surf);
    if (++bounces >= max_bounces) return b.finish(0.0, Termination::BounceLimit);
  }
}

void write_trajectory_csv(std::ostream& os, const HybridTrajectory& traj,
                          const BallParams& p, int samples_per_arc) {
  samples_per_arc = std::max(1, samples_per_arc);
  os << "t,x,y,theta,vx,vy,omega,phase\n";
  auto row = [&](const BallState& s, std::string_view phase, std::size_t k) {
    os << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.y) << ','
       << format_double(s.theta) << ',' << format_double(s.vx) << ',' << format_double(s.vy)
       << ',' << format_double(s.omega) << ',' << phase << '_' << k << '\n';
  };
  for (std::size_t k = 0; k < traj.arcs.size(); ++k) {
    const FlightArc& arc = traj.arcs[k];
    for (int j = 0; j <= samples_per_arc; ++j) {
      const BallState s = j == samples_per_arc
                              ? arc.end
                              : propagate(arc.start, arc.duration * j / samples_per_arc, p);
      row(s, "flight", k);
    }
    if (k < traj.events.size()) row(traj.events[k].outcome.post, "impact", k);
  }
}

}  // namespace impact_lab
