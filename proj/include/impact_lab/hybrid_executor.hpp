#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "impact_lab/ballistic_flight.hpp"
#include "impact_lab/impact_laws.hpp"

namespace impact_lab {

/// One table placement per anticipated bounce; the k-th impact uses entries[k].
struct ControlSchedule {
  std::vector<TableConfig> entries;
  int max_bounces = 0;
};

enum class Termination {
  ApexReached,
  TimeReached,
  NoMoreImpacts,
  ZenoGuard,
  InfeasiblePlacement,
  BounceLimit,
};

std::string_view to_string(Termination t);

/// Normal terminations are the ones a shooting error can be computed from.
bool terminated_normally(Termination t);

struct ImpactEvent {
  BallState pre;
  ImpactOutcome outcome;
  Surface surface;
};

/// arcs.size() == events.size() + 1 and events[k].pre == arcs[k].end.
struct HybridTrajectory {
  std::vector<FlightArc> arcs;
  std::vector<ImpactEvent> events;
  BallState terminal;
  double terminal_time = 0.0;
  int bounce_count = 0;
  Termination termination = Termination::NoMoreImpacts;
};

struct TerminalMode {
  enum class Kind { Apex, FixedTime };
  Kind kind = Kind::Apex;
  double T = 0.0;  ///< absolute end time for FixedTime

  static TerminalMode apex() { return {Kind::Apex, 0.0}; }
  static TerminalMode fixed_time(double T) { return {Kind::FixedTime, T}; }
};

struct ExecutorConfig {
  double t_min = 1e-9;          ///< minimum flight time passed to time_to_impact
  double zeno_interval = 1e-9;  ///< inter-impact time counted as a Zeno violation
  int zeno_max_violations = 3;
  int max_bounce_cap = 5;
  ImpactLaw law = ImpactLaw::Rolling;
};

/// Drops the disk through a sequence of table placements. After each reset the
/// table jumps to the next entry; after the final entry it stays in place.
///
/// Apex mode ends at the first instant after the last bounce where vy = 0
/// (immediately, if vy <= 0). Hitting the last table again before then is an
/// excess impact and ends the run with ZenoGuard. FixedTime mode ends at
/// absolute time T.
HybridTrajectory run_schedule(const BallState& s0, const ControlSchedule& sched,
                              const BallParams& p, TerminalMode mode,
                              const ExecutorConfig& cfg = {});

/// Bounces on a fixed surface until absolute time T or max_bounces impacts.
HybridTrajectory run_surface(const BallState& s0, const Surface& surf, const BallParams& p,
                             double T, int max_bounces, const ExecutorConfig& cfg = {});

/// CSV with header t,x,y,theta,vx,vy,omega,phase. Each arc is sampled at
/// samples_per_arc + 1 evenly spaced instants (phase flight_k); each event adds
/// one post-impact row (phase impact_k).
void write_trajectory_csv(std::ostream& os, const HybridTrajectory& traj,
                          const BallParams& p, int samples_per_arc = 16);

}  // namespace impact_lab
