#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "impact_lab/limit_cycle.hpp"

using namespace impact_lab;

namespace {

BallState drop(double x, double y) {
  BallState s;
  s.x = x;
  s.y = y;
  return s;
}

}  // namespace

TEST(SectionDistance, WeightsSpinByRadius) {
  const BallParams p;
  BallState a, b;
  b.x = 0.1;
  b.vx = -0.2;
  b.vy = 0.3;
  b.omega = 2.0;
  b.theta = 100.0;
  EXPECT_NEAR(section_distance(a, b, p), 0.1 + 0.2 + 0.3 + 0.1 * 2.0, 1e-15);
}

TEST(LimitCycle, VertexDropIsFixedPoint) {
  const CycleReport rep = limit_cycle_study(0.5, drop(0.0, 1.0), BallParams{}, 20);
  ASSERT_FALSE(rep.distances.empty());
  EXPECT_LT(rep.distances.front(), 1e-12);
  EXPECT_TRUE(rep.converged);
  EXPECT_EQ(rep.period, 1);
}

TEST(LimitCycle, OffVertexRollingDropContracts) {
  const BallParams p;
  const CycleReport rep = limit_cycle_study(0.5, drop(0.3, 1.0), p, 120);
  EXPECT_EQ(rep.section.size(), 120u);
  EXPECT_EQ(rep.period, 2);
  EXPECT_GT(rep.spectral_radius_estimate, 0.0);
  EXPECT_LT(rep.spectral_radius_estimate, 1.0);
  EXPECT_LT(rep.jacobian_spectral_radius, 1.0);
  EXPECT_LT(rep.mean_contraction, 1.0);
  // The distances shrink by orders of magnitude over the run.
  EXPECT_LT(rep.distances.back(), 1e-3 * rep.distances.front());
  ASSERT_EQ(rep.period_states.size(), 2u);
  EXPECT_NEAR(rep.period_states[0].x, -rep.period_states[1].x, 1e-3);
}

TEST(LimitCycle, SlipperyDropDoesNotContract) {
  CycleOptions opts;
  opts.law = ImpactLaw::Slippery;
  const CycleReport rep = limit_cycle_study(0.5, drop(0.3, 1.0), BallParams{}, 200, opts);
  EXPECT_FALSE(rep.converged);
  EXPECT_NEAR(rep.mean_contraction, 1.0, 0.05);
  for (const ImpactEvent& e : rep.trajectory.events) {
    EXPECT_EQ(e.outcome.post.omega, e.pre.omega);
  }
}

TEST(LimitCycle, Validation) {
  EXPECT_THROW(limit_cycle_study(0.0, drop(0.3, 1.0), BallParams{}, 50), std::invalid_argument);
  EXPECT_THROW(limit_cycle_study(0.5, drop(0.3, 1.0), BallParams{}, 19), std::invalid_argument);
  EXPECT_THROW(limit_cycle_study(0.5, drop(2.0, 0.5), BallParams{}, 50), std::invalid_argument);
}

TEST(LimitCycle, CsvLayout) {
  const CycleReport rep = limit_cycle_study(0.5, drop(0.3, 1.0), BallParams{}, 20);
  std::ostringstream os;
  write_cycle_csv(os, rep, BallParams{});
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "impact_index,t,x,y,theta,vx,vy,omega,return_distance");
  int rows = 0;
  while (std::getline(in, line)) {
    if (rows < rep.period) EXPECT_EQ(line.back(), ',');
    ++rows;
  }
  EXPECT_EQ(rows, 20);
}
