// impact_lab: command-line front end for the bouncing-disk experiments.
//
//   impact_lab simulate    --config FILE --out DIR
//   impact_lab solve       --theta-f 0.05 --time 0.1
//   impact_lab sweep       --seed 42 --out run1 --threads 4
//   impact_lab limit-cycle --out DIR
//   impact_lab audit       --config FILE --out DIR
//
// Exit status: 0 success, 1 usage error, 2 configuration error, 3 runtime failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "impact_lab/config.hpp"
#include "impact_lab/limit_cycle.hpp"
#include "impact_lab/svg_render.hpp"
#include "impact_lab/symmetry.hpp"

namespace fs = std::filesystem;
using namespace impact_lab;

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::string mode;
  int threads = 0;
  std::optional<double> theta_f;
  std::optional<double> time;
};

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

LabConfig load_config(const Options& opt) {
  ConfigFile file = opt.config_path.empty() ? ConfigFile{} : ConfigFile::load(opt.config_path);
  if (!opt.mode.empty()) {
    file.set("solver.terminal_mode", opt.mode);
    file.set("sim.mode", opt.mode);
  }
  LabConfig cfg = make_lab_config(file);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.theta_f) cfg.target.theta_f = *opt.theta_f;
  if (opt.time) {
    if (!(*opt.time > 0.0)) throw ConfigError("--time must be positive");
    cfg.target.T = *opt.time;
  }
  return cfg;
}

int thread_count(const Options& opt) {
  if (opt.threads > 0) return opt.threads;
  if (const char* env = std::getenv("IMPACT_LAB_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("IMPACT_LAB_THREADS must be a positive integer, got '") +
                      env + "'");
  }
  return 1;
}

nlohmann::json state_json(const BallState& s) {
  return {{"t", s.t},   {"x", s.x},   {"y", s.y},        {"theta", s.theta},
          {"vx", s.vx}, {"vy", s.vy}, {"omega", s.omega}};
}

int cmd_simulate(const Options& opt) {
  const LabConfig cfg = load_config(opt);
  const HybridTrajectory traj = simulate_spec(cfg.sim, cfg.ball, cfg.solver.executor);
  auto csv = open_output(opt.out_dir, "trajectory.csv");
  write_trajectory_csv(csv, traj, cfg.ball, cfg.sim.samples_per_arc);
  auto svg = open_output(opt.out_dir, "trajectory.svg");
  std::optional<double> alpha;
  if (cfg.sim.surface == SimulationSurface::Parabola) alpha = cfg.sim.parabola_alpha;
  render_trajectory_svg(svg, traj, cfg.ball, alpha);
  std::cout << "bounces=" << traj.bounce_count << " termination=" << to_string(traj.termination)
            << " terminal_time=" << traj.terminal_time << '\n';
  return 0;
}

int cmd_solve(const Options& opt) {
  const LabConfig cfg = load_config(opt);
  const SolveReport rep = solve_report(cfg.target, cfg.ball, cfg.solver, cfg.seed);
  nlohmann::json record{{"theta_f", cfg.target.theta_f},
                        {"T", cfg.target.T},
                        {"seed", cfg.seed},
                        {"solved", rep.accepted.has_value()}};
  if (rep.accepted) {
    const ShootingResult& r = *rep.accepted;
    nlohmann::json controls = nlohmann::json::array();
    for (const TableConfig& tb : r.schedule.entries) controls.push_back({{"u", tb.u}, {"v", tb.v}});
    record["bounces"] = r.bounce_count;
    record["error"] = r.error;
    record["controls"] = controls;
    record["terminal"] = state_json(r.terminal);
    record["terminal_time"] = r.terminal_time;
  } else {
    record["bounces"] = -1;
    record["error"] = rep.best_error;
  }
  std::cout << record.dump(2) << '\n';
  auto out = open_output(opt.out_dir, "solve.json");
  out << record.dump(2) << '\n';
  return 0;
}

int cmd_sweep(const Options& opt) {
  const LabConfig cfg = load_config(opt);
  const int threads = thread_count(opt);
  const auto cells = run_sweep(cfg.sweep, cfg.ball, cfg.solver, cfg.seed, threads);
  auto csv = open_output(opt.out_dir, "sweep.csv");
  write_sweep_csv(csv, cells);
  fs::create_directories(opt.out_dir);
  render_polar_svg(cells, fs::path(opt.out_dir) / "controllability.svg",
                   PolarVariant::Controllability);
  render_polar_svg(cells, fs::path(opt.out_dir) / "failure.svg", PolarVariant::Failure);
  std::size_t solved = 0;
  for (const SweepCell& c : cells) solved += c.solved() ? 1 : 0;
  std::cout << "cells=" << cells.size() << " solved=" << solved << '\n';
  return 0;
}

int cmd_limit_cycle(const Options& opt) {
  const LabConfig cfg = load_config(opt);
  BallState s0;
  s0.x = cfg.cycle.x0;
  s0.y = cfg.cycle.y0;
  CycleOptions copts;
  copts.law = cfg.cycle.law;
  copts.executor = cfg.solver.executor;
  const CycleReport rep = limit_cycle_study(cfg.cycle.alpha, s0, cfg.ball, cfg.cycle.n_impacts, copts);

  auto csv = open_output(opt.out_dir, "cycle.csv");
  write_cycle_csv(csv, rep, cfg.ball);
  auto traj_csv = open_output(opt.out_dir, "cycle_trajectory.csv");
  write_trajectory_csv(traj_csv, rep.trajectory, cfg.ball);
  auto svg = open_output(opt.out_dir, "cycle.svg");
  render_trajectory_svg(svg, rep.trajectory, cfg.ball, cfg.cycle.alpha);

  nlohmann::json period = nlohmann::json::array();
  for (const BallState& s : rep.period_states) period.push_back(state_json(s));
  const nlohmann::json report{
      {"converged", rep.converged},
      {"converged_at", rep.converged_at},
      {"period", rep.period},
      {"spectral_radius_estimate", rep.spectral_radius_estimate},
      {"jacobian_spectral_radius", rep.jacobian_spectral_radius},
      {"mean_contraction", rep.mean_contraction},
      {"period_states", period},
  };
  auto json_out = open_output(opt.out_dir, "cycle_report.json");
  json_out << report.dump(2) << '\n';
  std::cout << report.dump(2) << '\n';
  return 0;
}

int cmd_audit(const Options& opt) {
  const LabConfig cfg = load_config(opt);
  const HybridTrajectory traj = simulate_spec(cfg.sim, cfg.ball, cfg.solver.executor);
  const SymmetryReport rep = audit_trajectory(traj, cfg.ball);
  auto csv = open_output(opt.out_dir, "audit.csv");
  write_symmetry_csv(csv, rep);
  std::cout << "events=" << rep.events.size() << " max_jump_J=" << rep.max_jump_J
            << " max_jump_A=" << rep.max_jump_A << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid impact laboratory for the bouncing disk"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "key = value configuration file");
    sub->add_option("--seed", opt.seed, "master random seed");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--mode", opt.mode, "terminal mode")->check(CLI::IsMember({"apex", "fixed-time"}));
    sub->add_option("--threads", opt.threads, "worker threads (default: IMPACT_LAB_THREADS or 1)")
        ->check(CLI::PositiveNumber);
  };

  int (*handler)(const Options&) = nullptr;
  auto sub = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s);
    s->callback([&handler, fn] { handler = fn; });
    return s;
  };
  sub("simulate", "simulate one trajectory (trajectory.csv, trajectory.svg)", cmd_simulate);
  CLI::App* solve_cmd = sub("solve", "solve one orientation target", cmd_solve);
  solve_cmd->add_option("--theta-f", opt.theta_f, "requested change of angle [rad]");
  solve_cmd->add_option("--time", opt.time, "requested duration T [s]");
  sub("sweep", "polar controllability sweep (sweep.csv, *.svg)", cmd_sweep);
  sub("limit-cycle", "parabola limit-cycle study (cycle.csv, cycle.svg)", cmd_limit_cycle);
  sub("audit", "momentum-map audit of a simulated trajectory (audit.csv)", cmd_audit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    return handler(opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
