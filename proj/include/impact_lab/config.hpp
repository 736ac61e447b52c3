#pragma once

// Flat "key = value" configuration files. '#' starts a comment; keys are
// namespaced with dots (ball.m, solver.restarts, sweep.n_theta, ...).

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "impact_lab/limit_cycle.hpp"
#include "impact_lab/sweep.hpp"

namespace impact_lab {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigFile {
 public:
  static ConfigFile parse(std::istream& in, const std::string& source = "<config>");
  static ConfigFile load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  /// Comma-separated list of numbers.
  std::vector<double> get_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

 private:
  std::map<std::string, std::string> values_;
  std::string source_;
};

enum class SimulationSurface { Schedule, Plane, Parabola };

/// Initial state and surface for the simulate/audit commands.
struct SimulationSpec {
  BallState initial{0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  SimulationSurface surface = SimulationSurface::Schedule;
  ControlSchedule schedule;
  TableConfig plane;
  double parabola_alpha = 0.5;
  TerminalMode::Kind mode = TerminalMode::Kind::Apex;
  double T = 2.0;
  int max_bounces = 5;
  int samples_per_arc = 16;
  ImpactLaw law = ImpactLaw::Rolling;
};

struct CycleSpec {
  double alpha = 0.5;
  double x0 = 0.3;
  double y0 = 1.0;
  int n_impacts = 200;
  ImpactLaw law = ImpactLaw::Rolling;
};

struct LabConfig {
  BallParams ball;
  SolverConfig solver;
  SweepGrid sweep;
  TargetSpec target;
  SimulationSpec sim;
  CycleSpec cycle;
  std::uint64_t seed = 42;
};

/// Builds a validated configuration; unknown keys and malformed values raise
/// ConfigError.
LabConfig make_lab_config(const ConfigFile& file);

TerminalMode::Kind parse_terminal_mode(const std::string& text);
ImpactLaw parse_impact_law(const std::string& text);

/// Runs the trajectory described by `sim` (schedule, fixed plane or parabola).
HybridTrajectory simulate_spec(const SimulationSpec& sim, const BallParams& p,
                               const ExecutorConfig& exec);

}  // namespace impact_lab
