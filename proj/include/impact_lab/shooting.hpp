#pragma once

// Multi-start shooting for the bouncing-disk orientation problem: choose a
// table tilt and height for each bounce so the disk returns to its start
// position with the requested change of angle after the requested time.

#include <array>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "impact_lab/hybrid_executor.hpp"

namespace impact_lab {

class SplitMix64;

struct TargetSpec {
  double x0 = 0.0;
  double y0 = 1.0;
  double theta0 = 0.0;
  double theta_f = 0.0;  ///< requested change of angle [rad]
  double T = 1.0;        ///< requested duration [s]
};

/// Diagonal of the weight matrix applied to q = squared residuals.
struct ErrorWeights {
  std::array<double, 4> A{1.0, 1.0, 50.0, 5.0};
};

struct SolverConfig {
  int restarts = 10;
  double epsilon = 1e-2;
  int max_iters = 200;
  int max_bounces = 5;
  TerminalMode::Kind terminal_mode = TerminalMode::Kind::Apex;
  double height_min = 0.0;
  double height_max = 1.0;
  double angle_min = 0.0;
  double angle_max = std::numbers::pi;
  double simplex_scale = 0.1;  ///< initial simplex edge, as a fraction of each range
  double simplex_tol = 1e-6;   ///< stop once the simplex diameter falls below this
  ErrorWeights weights;
  ExecutorConfig executor;
};

/// Error assigned to runs that end in InfeasiblePlacement, ZenoGuard or
/// NoMoreImpacts.
inline constexpr double kAbnormalPenalty = 1e6;

struct ShootingResult {
  ControlSchedule schedule;
  std::vector<double> controls;  ///< u_1, v_1, ..., u_n, v_n
  int bounce_count = 0;
  double error = 0.0;
  BallState terminal;
  double terminal_time = 0.0;
  std::uint64_t seed = 0;
};

/// E = sum_i A_ii q_i^2 with q = [(x_f-x0)^2, (y_f-y0)^2, (dtheta-theta_f)^2,
/// (T_f-T)^2]. Every entry of q is already squared, so E is a weighted sum of
/// fourth powers.
double error_function(const HybridTrajectory& traj, const TargetSpec& target,
                      const ErrorWeights& w);

BallState start_state(const TargetSpec& target);

/// Stationary tables built from interleaved (u, v) pairs.
ControlSchedule schedule_from_controls(std::span<const double> controls);

TerminalMode terminal_mode_for(const TargetSpec& target, const SolverConfig& cfg);

HybridTrajectory simulate_controls(std::span<const double> controls, const TargetSpec& target,
                                   const BallParams& p, const SolverConfig& cfg);

double evaluate_controls(std::span<const double> controls, const TargetSpec& target,
                         const BallParams& p, const SolverConfig& cfg);

struct RefineResult {
  std::vector<double> controls;
  double error = 0.0;
  int iterations = 0;
};

/// Bounded Nelder-Mead on the 2n control vector (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). Trial points are clamped to the sampling box.
RefineResult refine(std::vector<double> initial, int n, const TargetSpec& target,
                    const BallParams& p, const SolverConfig& cfg);

/// Draws per bounce before initial_guess gives up on finding a feasible placement.
inline constexpr int kMaxPlacementDraws = 64;

/// Random (u, v) pairs, uniform over the box, built one bounce at a time: a
/// pair is redrawn while the disk fails to reach it, and the final pair is
/// redrawn while the whole schedule ends abnormally.
std::vector<double> initial_guess(SplitMix64& rng, int n, const TargetSpec& target,
                                  const BallParams& p, const SolverConfig& cfg);

struct SolveReport {
  std::optional<ShootingResult> accepted;
  double best_error = kAbnormalPenalty;  ///< lowest error seen over all bounce counts
  int refinements = 0;
};

/// Tries n = 0, 1, ..., max_bounces and accepts the first n whose best restart
/// reaches epsilon (ties within n broken by error, then restart index).
SolveReport solve_report(const TargetSpec& target, const BallParams& p,
                         const SolverConfig& cfg, std::uint64_t seed);

std::optional<ShootingResult> solve(const TargetSpec& target, const BallParams& p,
                                    const SolverConfig& cfg, std::uint64_t seed);

/// SplitMix64 (Steele, Lea & Flood). Fixed output sequence on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform double in [0, 1) built from the top 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::uint64_t state_;
};

/// Order-sensitive hash used to derive per-cell and per-restart streams.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace impact_lab
