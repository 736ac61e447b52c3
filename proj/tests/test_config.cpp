#include <gtest/gtest.h>

#include <sstream>

#include "impact_lab/config.hpp"

using namespace impact_lab;

namespace {

ConfigFile parse(const std::string& text) {
  std::istringstream in(text);
  return ConfigFile::parse(in, "test.cfg");
}

LabConfig lab(const std::string& text) { return make_lab_config(parse(text)); }

}  // namespace

TEST(ConfigFile, CommentsAndWhitespace) {
  const ConfigFile f = parse(
      "# header\n"
      "\n"
      "  ball.m = 2.5   # trailing\n"
      "sweep.n_theta=7\r\n"
      "sim.surface = parabola\n");
  EXPECT_EQ(f.get_double("ball.m", 0.0), 2.5);
  EXPECT_EQ(f.get_int("sweep.n_theta", 0), 7);
  EXPECT_EQ(f.get_string("sim.surface", ""), "parabola");
  EXPECT_EQ(f.get_double("ball.R", 0.25), 0.25);
  EXPECT_EQ(f.values().size(), 3u);
}

TEST(ConfigFile, SyntaxErrorsCarryLocation) {
  try {
    parse("ball.m = 1\nnot a pair\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("test.cfg:2"), std::string::npos);
  }
  EXPECT_THROW(parse("ball.m = 1\nball.m = 2\n"), ConfigError);
  EXPECT_THROW(parse(" = 3\n"), ConfigError);
  EXPECT_THROW(ConfigFile::load("/nonexistent/file.cfg"), ConfigError);
}

TEST(ConfigFile, NumberParsing) {
  const ConfigFile f = parse("a = 1e-3\nb = 12abc\nc = 3.5\nd = nan\nl = 1, 2 ,3\n");
  EXPECT_EQ(f.get_double("a", 0.0), 1e-3);
  EXPECT_THROW(f.get_double("b", 0.0), ConfigError);
  EXPECT_THROW(f.get_int("c", 0), ConfigError);
  EXPECT_THROW(f.get_double("d", 0.0), ConfigError);
  EXPECT_EQ(f.get_list("l"), (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_TRUE(f.get_list("missing").empty());
}

TEST(LabConfig, Defaults) {
  const LabConfig c = lab("");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.ball.m, BallParams{}.m);
  EXPECT_EQ(c.ball.I, 0.5 * c.ball.m * c.ball.R * c.ball.R);
  EXPECT_EQ(c.solver.restarts, SolverConfig{}.restarts);
  EXPECT_EQ(c.sweep.size(), SweepGrid{}.size());
  EXPECT_EQ(c.sim.surface, SimulationSurface::Schedule);
  EXPECT_EQ(c.sim.law, ImpactLaw::Rolling);
  EXPECT_EQ(c.cycle.n_impacts, 200);
}

TEST(LabConfig, InertiaFollowsMassAndRadiusUnlessGiven) {
  const LabConfig a = lab("ball.m = 2\nball.R = 0.2\n");
  EXPECT_NEAR(a.ball.I, 0.5 * 2.0 * 0.04, 1e-15);
  const LabConfig b = lab("ball.m = 2\nball.R = 0.2\nball.I = 0.3\n");
  EXPECT_EQ(b.ball.I, 0.3);
}

TEST(LabConfig, EnumsAndLists) {
  const LabConfig c = lab(
      "solver.terminal_mode = fixed-time\n"
      "solver.weights = 1, 1, 10, 2\n"
      "sim.law = slippery\n"
      "cycle.law = slippery\n"
      "schedule.u = 0.1, 0.2\n"
      "schedule.v = 0.0, 0.1\n"
      "seed = 18446744073709551615\n");
  EXPECT_EQ(c.solver.terminal_mode, TerminalMode::Kind::FixedTime);
  EXPECT_EQ(c.solver.weights.A[2], 10.0);
  EXPECT_EQ(c.sim.law, ImpactLaw::Slippery);
  EXPECT_EQ(c.cycle.law, ImpactLaw::Slippery);
  ASSERT_EQ(c.sim.schedule.entries.size(), 2u);
  EXPECT_EQ(c.sim.schedule.entries[1], (TableConfig{0.2, 0.1, 0.0, 0.0}));
  EXPECT_EQ(c.sim.schedule.max_bounces, 2);
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
}

TEST(LabConfig, RejectsBadInput) {
  EXPECT_THROW(lab("ball.mass = 1\n"), ConfigError);
  EXPECT_THROW(lab("ball.m = -1\n"), ConfigError);
  EXPECT_THROW(lab("solver.terminal_mode = apex-ish\n"), ConfigError);
  EXPECT_THROW(lab("sim.law = sticky\n"), ConfigError);
  EXPECT_THROW(lab("sim.surface = sphere\n"), ConfigError);
  EXPECT_THROW(lab("solver.weights = 1, 2, 3\n"), ConfigError);
  EXPECT_THROW(lab("solver.weights = 1, 2, 3, -4\n"), ConfigError);
  EXPECT_THROW(lab("solver.restarts = 0\n"), ConfigError);
  EXPECT_THROW(lab("schedule.u = 0.1\nschedule.v = 0.1, 0.2\n"), ConfigError);
  EXPECT_THROW(lab("sweep.n_T = 0\n"), ConfigError);
  EXPECT_THROW(lab("target.T = 0\n"), ConfigError);
  EXPECT_THROW(lab("cycle.n_impacts = 10\n"), ConfigError);
  EXPECT_THROW(lab("seed = -3\n"), ConfigError);
}

TEST(SimulateSpec, SurfacesDispatch) {
  LabConfig c = lab("sim.surface = plane\nsim.T = 1.0\nsim.max_bounces = 5\n");
  const HybridTrajectory plane = simulate_spec(c.sim, c.ball, c.solver.executor);
  EXPECT_EQ(plane.bounce_count, 1);
  c = lab("sim.surface = parabola\nsim.x = 0.3\nsim.max_bounces = 4\nsim.T = 100\n");
  const HybridTrajectory para = simulate_spec(c.sim, c.ball, c.solver.executor);
  EXPECT_EQ(para.bounce_count, 4);
  c = lab("schedule.u = 0\nschedule.v = 0\n");
  const HybridTrajectory sched = simulate_spec(c.sim, c.ball, c.solver.executor);
  EXPECT_EQ(sched.bounce_count, 1);
  EXPECT_TRUE(terminated_normally(sched.termination));
}
