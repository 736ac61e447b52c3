#include "impact_lab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace impact_lab {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(value)) {
    throw ConfigError("config key '" + key + "': not a finite number: '" + text + "'");
  }
  return value;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "ball.m", "ball.I", "ball.R", "ball.g",
      "solver.restarts", "solver.epsilon", "solver.max_iters", "solver.max_bounces",
      "solver.terminal_mode", "solver.height_min", "solver.height_max", "solver.angle_min",
      "solver.angle_max", "solver.weights", "solver.simplex_scale", "solver.simplex_tol",
      "executor.t_min", "executor.zeno_interval", "executor.zeno_max_violations",
      "executor.max_bounce_cap",
      "sweep.theta_min", "sweep.theta_max", "sweep.n_theta", "sweep.T_min", "sweep.T_max",
      "sweep.n_T",
      "target.x0", "target.y0", "target.theta0", "target.theta_f", "target.T",
      "sim.x", "sim.y", "sim.theta", "sim.vx", "sim.vy", "sim.omega", "sim.surface",
      "sim.mode", "sim.T", "sim.max_bounces", "sim.samples_per_arc", "sim.law",
      "schedule.u", "schedule.v", "schedule.du", "schedule.dv",
      "plane.u", "plane.v", "plane.du", "plane.dv",
      "parabola.alpha",
      "cycle.alpha", "cycle.x0", "cycle.y0", "cycle.n_impacts", "cycle.law",
      "seed",
  };
  return keys;
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in, const std::string& source) {
  ConfigFile cfg;
  cfg.source_ = source;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
    if (cfg.values_.count(key)) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    cfg.values_[key] = value;
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse(in, path.string());
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : to_double(key, it->second);
}

int ConfigFile::get_int(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  int value = 0;
  const std::string& text = it->second;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigError("config key '" + key + "': not an integer: '" + text + "'");
  }
  return value;
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::vector<double> ConfigFile::get_list(const std::string& key) const {
  std::vector<double> out;
  const auto it = values_.find(key);
  if (it == values_.end()) return out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  return out;
}

TerminalMode::Kind parse_terminal_mode(const std::string& text) {
  if (text == "apex") return TerminalMode::Kind::Apex;
  if (text == "fixed-time") return TerminalMode::Kind::FixedTime;
  throw ConfigError("terminal mode must be 'apex' or 'fixed-time', got '" + text + "'");
}

ImpactLaw parse_impact_law(const std::string& text) {
  if (text == "rolling") return ImpactLaw::Rolling;
  if (text == "slippery") return ImpactLaw::Slippery;
  throw ConfigError("impact law must be 'rolling' or 'slippery', got '" + text + "'");
}

LabConfig make_lab_config(const ConfigFile& f) {
  for (const auto& [key, value] : f.values()) {
    if (!known_keys().count(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  LabConfig c;
  BallParams& b = c.ball;
  b.m = f.get_double("ball.m", b.m);
  b.R = f.get_double("ball.R", b.R);
  b.g = f.get_double("ball.g", b.g);
  b.I = f.get_double("ball.I", 0.5 * b.m * b.R * b.R);
  try {
    b.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  SolverConfig& s = c.solver;
  s.restarts = f.get_int("solver.restarts", s.restarts);
  s.epsilon = f.get_double("solver.epsilon", s.epsilon);
  s.max_iters = f.get_int("solver.max_iters", s.max_iters);
  s.max_bounces = f.get_int("solver.max_bounces", s.max_bounces);
  s.terminal_mode = parse_terminal_mode(f.get_string("solver.terminal_mode", "apex"));
  s.height_min = f.get_double("solver.height_min", s.height_min);
  s.height_max = f.get_double("solver.height_max", s.height_max);
  s.angle_min = f.get_double("solver.angle_min", s.angle_min);
  s.angle_max = f.get_double("solver.angle_max", s.angle_max);
  s.simplex_scale = f.get_double("solver.simplex_scale", s.simplex_scale);
  s.simplex_tol = f.get_double("solver.simplex_tol", s.simplex_tol);
  if (f.has("solver.weights")) {
    const auto w = f.get_list("solver.weights");
    if (w.size() != 4 || std::any_of(w.begin(), w.end(), [](double v) { return v < 0.0; })) {
      throw ConfigError("solver.weights must list 4 nonnegative numbers");
    }
    std::copy(w.begin(), w.end(), s.weights.A.begin());
  }
  ExecutorConfig& e = s.executor;
  e.t_min = f.get_double("executor.t_min", e.t_min);
  e.zeno_interval = f.get_double("executor.zeno_interval", e.zeno_interval);
  e.zeno_max_violations = f.get_int("executor.zeno_max_violations", e.zeno_max_violations);
  e.max_bounce_cap = f.get_int("executor.max_bounce_cap", e.max_bounce_cap);
  if (s.restarts < 1) throw ConfigError("solver.restarts must be >= 1");
  if (!(s.epsilon > 0.0)) throw ConfigError("solver.epsilon must be positive");
  if (s.max_iters < 0) throw ConfigError("solver.max_iters must be >= 0");
  if (s.max_bounces < 0 || s.max_bounces > e.max_bounce_cap) {
    throw ConfigError("solver.max_bounces must lie in [0, executor.max_bounce_cap]");
  }
  if (!(s.height_max >= s.height_min) || !(s.angle_max >= s.angle_min)) {
    throw ConfigError("solver ranges must be nonempty");
  }

  SweepGrid& g = c.sweep;
  g.theta_min = f.get_double("sweep.theta_min", g.theta_min);
  g.theta_max = f.get_double("sweep.theta_max", g.theta_max);
  g.n_theta = f.get_int("sweep.n_theta", g.n_theta);
  g.T_min = f.get_double("sweep.T_min", g.T_min);
  g.T_max = f.get_double("sweep.T_max", g.T_max);
  g.n_T = f.get_int("sweep.n_T", g.n_T);
  try {
    g.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }

  TargetSpec& t = c.target;
  t.x0 = f.get_double("target.x0", t.x0);
  t.y0 = f.get_double("target.y0", t.y0);
  t.theta0 = f.get_double("target.theta0", t.theta0);
  t.theta_f = f.get_double("target.theta_f", t.theta_f);
  t.T = f.get_double("target.T", t.T);
  if (!(t.T > 0.0)) throw ConfigError("target.T must be positive");

  SimulationSpec& sim = c.sim;
  BallState& s0 = sim.initial;
  s0.x = f.get_double("sim.x", s0.x);
  s0.y = f.get_double("sim.y", s0.y);
  s0.theta = f.get_double("sim.theta", s0.theta);
  s0.vx = f.get_double("sim.vx", s0.vx);
  s0.vy = f.get_double("sim.vy", s0.vy);
  s0.omega = f.get_double("sim.omega", s0.omega);
  const std::string surface = f.get_string("sim.surface", "schedule");
  if (surface == "schedule") {
    sim.surface = SimulationSurface::Schedule;
  } else if (surface == "plane") {
    sim.surface = SimulationSurface::Plane;
  } else if (surface == "parabola") {
    sim.surface = SimulationSurface::Parabola;
  } else {
    throw ConfigError("sim.surface must be schedule, plane or parabola");
  }
  sim.mode = parse_terminal_mode(f.get_string("sim.mode", "apex"));
  sim.T = f.get_double("sim.T", sim.T);
  sim.max_bounces = f.get_int("sim.max_bounces", sim.max_bounces);
  sim.samples_per_arc = f.get_int("sim.samples_per_arc", sim.samples_per_arc);
  sim.law = parse_impact_law(f.get_string("sim.law", "rolling"));

  const auto us = f.get_list("schedule.u");
  const auto vs = f.get_list("schedule.v");
  auto dus = f.get_list("schedule.du");
  auto dvs = f.get_list("schedule.dv");
  if (us.size() != vs.size()) throw ConfigError("schedule.u and schedule.v differ in length");
  if (dus.empty()) dus.assign(us.size(), 0.0);
  if (dvs.empty()) dvs.assign(us.size(), 0.0);
  if (dus.size() != us.size() || dvs.size() != us.size()) {
    throw ConfigError("schedule.du/schedule.dv must match schedule.u in length");
  }
  for (std::size_t i = 0; i < us.size(); ++i) {
    sim.schedule.entries.push_back(TableConfig{us[i], vs[i], dus[i], dvs[i]});
  }
  sim.schedule.max_bounces = static_cast<int>(us.size());
  if (sim.schedule.max_bounces > e.max_bounce_cap) {
    throw ConfigError("schedule has more entries than executor.max_bounce_cap");
  }
  sim.plane = TableConfig{f.get_double("plane.u", 0.0), f.get_double("plane.v", 0.0),
                          f.get_double("plane.du", 0.0), f.get_double("plane.dv", 0.0)};
  sim.parabola_alpha = f.get_double("parabola.alpha", sim.parabola_alpha);
  if (!(sim.parabola_alpha > 0.0)) throw ConfigError("parabola.alpha must be positive");

  CycleSpec& cy = c.cycle;
  cy.alpha = f.get_double("cycle.alpha", cy.alpha);
  cy.x0 = f.get_double("cycle.x0", cy.x0);
  cy.y0 = f.get_double("cycle.y0", cy.y0);
  cy.n_impacts = f.get_int("cycle.n_impacts", cy.n_impacts);
  cy.law = parse_impact_law(f.get_string("cycle.law", "rolling"));
  if (!(cy.alpha > 0.0)) throw ConfigError("cycle.alpha must be positive");
  if (cy.n_impacts < 20) throw ConfigError("cycle.n_impacts must be >= 20");

  if (f.has("seed")) {
    const std::string& text = f.values().at("seed");
    std::uint64_t seed = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      throw ConfigError("seed must be an unsigned 64-bit integer");
    }
    c.seed = seed;
  }
  return c;
}

}  // namespace impact_lab

namespace impact_lab {

HybridTrajectory simulate_spec(const SimulationSpec& sim, const BallParams& p,
                               const ExecutorConfig& exec) {
  ExecutorConfig cfg = exec;
  cfg.law = sim.law;
  const TerminalMode mode = sim.mode == TerminalMode::Kind::Apex
                                ? TerminalMode::apex()
                                : TerminalMode::fixed_time(sim.T);
  switch (sim.surface) {
    case SimulationSurface::Schedule:
      return run_schedule(sim.initial, sim.schedule, p, mode, cfg);
    case SimulationSurface::Plane:
      return run_surface(sim.initial, Plane{sim.plane}, p, sim.T, sim.max_bounces, cfg);
    case SimulationSurface::Parabola:
      return run_surface(sim.initial, Parabola{sim.parabola_alpha}, p, sim.T,
                         sim.max_bounces, cfg);
  }
  throw std::logic_error("unhandled simulation surface");
}

}  // namespace impact_lab
