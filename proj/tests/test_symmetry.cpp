#include <gtest/gtest.h>

#include <sstream>

#include "impact_lab/symmetry.hpp"

using namespace impact_lab;

TEST(MomentumMap, ExampleValues) {
  const BallParams p{1.0, 2.0, 0.1, 9.81};
  BallState s;
  s.omega = 4.0;
  EXPECT_EQ(momentum_map(s, p), 8.0);
  EXPECT_EQ(mechanical_connection(s, p), 4.0);
  EXPECT_EQ(locked_inertia(p), 2.0);
  EXPECT_NEAR(mechanical_connection(s, p), momentum_map(s, p) / locked_inertia(p), 1e-15);
  s.omega = 0.0;
  EXPECT_EQ(momentum_map(s, p), 0.0);
}

TEST(MomentumMap, ConstantAlongFlight) {
  const BallParams p;
  BallState s;
  s.y = 2.0;
  s.vx = 1.0;
  s.omega = -3.0;
  const BallState e = propagate(s, 0.37, p);
  EXPECT_EQ(momentum_map(e, p), momentum_map(s, p));
  EXPECT_EQ(mechanical_connection(e, p), mechanical_connection(s, p));
}

TEST(Audit, EmptyTrajectory) {
  BallState s;
  s.y = 1.0;
  const HybridTrajectory traj = run_schedule(s, ControlSchedule{}, BallParams{}, TerminalMode::apex());
  const SymmetryReport rep = audit_trajectory(traj, BallParams{});
  EXPECT_EQ(rep.J_series.size(), 1u);
  EXPECT_EQ(rep.A_series.size(), 1u);
  EXPECT_TRUE(rep.events.empty());
  EXPECT_EQ(rep.max_jump_J, 0.0);
  EXPECT_EQ(rep.max_jump_A, 0.0);
}

TEST(Audit, SingleRollingImpactJump) {
  const BallParams p{1.0, 1.0, 1.0, 9.81};
  BallState pre;
  pre.y = 1.0;
  pre.vx = 1.0;
  pre.vy = -1.0;
  HybridTrajectory traj;
  const ImpactOutcome out = rolling_reset_flat(pre, TableConfig{}, p);
  traj.arcs.push_back({pre, 0.0, pre});
  traj.events.push_back({pre, out, Plane{}});
  traj.arcs.push_back({out.post, 0.0, out.post});
  traj.bounce_count = 1;
  traj.terminal = out.post;
  const SymmetryReport rep = audit_trajectory(traj, p);
  ASSERT_EQ(rep.events.size(), 1u);
  EXPECT_NEAR(rep.events[0].J_post - rep.events[0].J_pre, -0.5, 1e-12);
  EXPECT_NEAR(rep.events[0].J_post - rep.events[0].J_pre, out.lambda * p.R, 1e-12);
  EXPECT_NEAR(rep.max_jump_J, 0.5, 1e-12);
  EXPECT_EQ(rep.J_series.size(), 2u);
}

TEST(Audit, SlipperyRunPreservesMomentumMap) {
  const BallParams p;
  BallState s;
  s.x = 0.3;
  s.y = 1.0;
  s.omega = 2.5;
  ExecutorConfig cfg;
  cfg.law = ImpactLaw::Slippery;
  cfg.max_bounce_cap = 50;
  const HybridTrajectory traj = run_surface(s, Parabola{0.5}, p, 1e9, 40, cfg);
  ASSERT_EQ(traj.bounce_count, 40);
  const SymmetryReport rep = audit_trajectory(traj, p);
  EXPECT_EQ(rep.max_jump_J, 0.0);
  EXPECT_EQ(rep.max_jump_A, 0.0);
  EXPECT_EQ(rep.J_series.size(), traj.events.size() + 1);
}

TEST(Audit, RollingRunJumpsEqualLambdaR) {
  const BallParams p;
  BallState s;
  s.x = 0.3;
  s.y = 1.0;
  const HybridTrajectory traj = run_surface(s, Parabola{0.5}, p, 1e9, 30);
  const SymmetryReport rep = audit_trajectory(traj, p);
  ASSERT_EQ(rep.events.size(), traj.events.size());
  double largest = 0.0;
  for (std::size_t k = 0; k < rep.events.size(); ++k) {
    const double jump = rep.events[k].J_post - rep.events[k].J_pre;
    EXPECT_NEAR(jump, traj.events[k].outcome.lambda * p.R, 1e-12);
    largest = std::max(largest, std::abs(jump));
  }
  EXPECT_GT(largest, 0.0);
  EXPECT_EQ(rep.max_jump_J, largest);
}

TEST(Audit, CsvLayout) {
  const BallParams p{1.0, 1.0, 1.0, 9.81};
  BallState pre;
  pre.y = 1.0;
  pre.vx = 1.0;
  pre.vy = -1.0;
  HybridTrajectory traj;
  const ImpactOutcome out = rolling_reset_flat(pre, TableConfig{}, p);
  traj.arcs.push_back({pre, 0.0, pre});
  traj.events.push_back({pre, out, Plane{}});
  traj.arcs.push_back({out.post, 0.0, out.post});
  std::ostringstream os;
  write_symmetry_csv(os, audit_trajectory(traj, p));
  std::istringstream in(os.str());
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "event_index,t,J_pre,J_post,A_pre,A_post");
  EXPECT_EQ(row, "0,0,0,-0.5,0,-0.5");
  EXPECT_FALSE(std::getline(in, extra));
}
