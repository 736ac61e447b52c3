#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "impact_lab/svg_render.hpp"
#include "impact_lab/sweep.hpp"

using namespace impact_lab;

namespace {

SweepGrid small_grid() {
  SweepGrid g;
  g.n_theta = 4;
  g.n_T = 3;
  g.T_min = 0.1;
  g.T_max = 0.5;
  return g;
}

SolverConfig quick_solver() {
  SolverConfig cfg;
  cfg.restarts = 3;
  cfg.max_iters = 60;
  cfg.max_bounces = 2;
  return cfg;
}

std::string svg_of(const std::vector<SweepCell>& cells, PolarVariant v) {
  std::ostringstream os;
  render_polar_svg(os, cells, v);
  return os.str();
}

std::multiset<int> cell_refs(const std::string& svg) {
  std::multiset<int> out;
  const std::regex re("data-cell=\"([0-9]+)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator();
       ++it) {
    out.insert(std::stoi((*it)[1]));
  }
  return out;
}

// Tag balance is a cheap well-formedness check for the generated markup.
bool tags_balanced(const std::string& svg) {
  std::vector<std::string> stack;
  const std::regex tag("<(/?)([a-zA-Z]+)[^>]*?(/?)>");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tag); it != std::sregex_iterator();
       ++it) {
    const bool closing = (*it)[1] == "/";
    const bool self = (*it)[3] == "/";
    const std::string name = (*it)[2];
    if (self) continue;
    if (!closing) {
      stack.push_back(name);
    } else {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

}  // namespace

TEST(SweepGrid, InclusiveAxesAndSize) {
  const SweepGrid def;
  EXPECT_EQ(def.size(), 4000u);
  EXPECT_EQ(def.theta_at(0), 0.0);
  EXPECT_DOUBLE_EQ(def.theta_at(99), 2.0 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(def.T_at(0), 0.1);
  EXPECT_DOUBLE_EQ(def.T_at(39), 1.5);
  SweepGrid one;
  one.n_theta = 1;
  one.n_T = 1;
  EXPECT_NO_THROW(one.validate());
  EXPECT_EQ(one.theta_at(0), one.theta_min);
  SweepGrid bad;
  bad.n_T = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = SweepGrid{};
  bad.T_max = 0.05;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Sweep, RowMajorAndThreadIndependent) {
  const SweepGrid g = small_grid();
  const auto one = run_sweep(g, BallParams{}, quick_solver(), 42, 1);
  const auto three = run_sweep(g, BallParams{}, quick_solver(), 42, 3);
  ASSERT_EQ(one.size(), g.size());
  std::ostringstream a, b;
  write_sweep_csv(a, one);
  write_sweep_csv(b, three);
  EXPECT_EQ(a.str(), b.str());
  for (int i = 0; i < g.n_theta; ++i) {
    for (int j = 0; j < g.n_T; ++j) {
      const SweepCell& c = one[static_cast<std::size_t>(i * g.n_T + j)];
      EXPECT_EQ(c.theta_f, g.theta_at(i));
      EXPECT_EQ(c.T, g.T_at(j));
    }
  }
  // The smallest target sits inside the zero-bounce wedge.
  EXPECT_EQ(one[0].bounces, 0);
}

TEST(Sweep, SolvedCellsResimulate) {
  const SweepGrid g = small_grid();
  const SolverConfig cfg = quick_solver();
  for (const SweepCell& c : run_sweep(g, BallParams{}, cfg, 7, 2)) {
    EXPECT_GE(c.bounces, -1);
    EXPECT_LE(c.bounces, 5);
    if (!c.solved()) {
      EXPECT_GT(c.error, cfg.epsilon);
      continue;
    }
    TargetSpec t;
    t.theta_f = c.theta_f;
    t.T = c.T;
    EXPECT_EQ(static_cast<int>(c.controls.size()), 2 * c.bounces);
    EXPECT_NEAR(evaluate_controls(c.controls, t, BallParams{}, cfg), c.error, 1e-12);
    EXPECT_LE(c.error, cfg.epsilon);
  }
}

TEST(SweepCsv, Layout) {
  std::vector<SweepCell> cells(2);
  cells[0] = {0.0, 0.1, 0, 8.125e-4, {}};
  cells[1] = {1.5, 0.2, 2, 0.003, {0.1, 0.25, 0.5, 0.0}};
  std::ostringstream os;
  write_sweep_csv(os, cells);
  EXPECT_EQ(os.str(),
            "theta_f,T,bounces,error,controls\n"
            "0,0.1,0,0.0008125,\n"
            "1.5,0.2,2,0.003,0.1:0.25;0.5:0\n");
}

TEST(PolarSvg, VariantsPartitionCells) {
  std::vector<SweepCell> cells;
  for (int i = 0; i < 14; ++i) {
    cells.push_back({0.4 * i, 0.1 + 0.1 * i, i % 7 - 1, 0.0, {}});
  }
  const std::string good = svg_of(cells, PolarVariant::Controllability);
  const std::string bad = svg_of(cells, PolarVariant::Failure);
  EXPECT_TRUE(tags_balanced(good));
  EXPECT_TRUE(tags_balanced(bad));
  std::multiset<int> all = cell_refs(good);
  for (int i : cell_refs(bad)) all.insert(i);
  ASSERT_EQ(all.size(), cells.size());
  for (int i = 0; i < 14; ++i) EXPECT_EQ(all.count(i), 1u);
  for (int i : cell_refs(bad)) EXPECT_EQ(cells[static_cast<std::size_t>(i)].bounces, -1);
  EXPECT_EQ(svg_of(cells, PolarVariant::Failure), bad);
}

TEST(PolarSvg, AllSolvedFailureViewHasOnlyLegend) {
  std::vector<SweepCell> cells{{0.0, 0.1, 0, 0.0, {}}, {1.0, 0.5, 1, 0.0, {}}};
  const std::string svg = svg_of(cells, PolarVariant::Failure);
  EXPECT_TRUE(cell_refs(svg).empty());
  EXPECT_NE(svg.find("id=\"legend\""), std::string::npos);
  EXPECT_NE(svg.find("no solution"), std::string::npos);
}

TEST(PolarSvg, SingleCellGeometry) {
  // T equals the largest T, so the marker sits on the outer ring (radius 260
  // about the centre (300, 320)) at angle pi/2.
  const std::vector<SweepCell> cells{{std::numbers::pi / 2, 1.0, 1, 0.0, {}}};
  const std::string svg = svg_of(cells, PolarVariant::Controllability);
  EXPECT_NE(svg.find("data-cell=\"0\" cx=\"300.000\" cy=\"60.000\""), std::string::npos) << svg;
  EXPECT_NE(svg.find(std::string(bounce_color(1))), std::string::npos);
}

TEST(PolarSvg, FixedLegendColours) {
  std::set<std::string_view> distinct;
  for (int b = -1; b <= 5; ++b) {
    EXPECT_EQ(bounce_color(b), bounce_color(b));
    distinct.insert(bounce_color(b));
  }
  EXPECT_EQ(distinct.size(), 7u);
  EXPECT_THROW(bounce_color(6), std::out_of_range);
  EXPECT_THROW(render_polar_svg(std::cout, {}, PolarVariant::Failure), std::invalid_argument);
}

TEST(PolarSvg, FileErrorsNameThePath) {
  const std::vector<SweepCell> cells{{0.0, 0.1, 0, 0.0, {}}};
  const std::filesystem::path bad = "/nonexistent-dir/out.svg";
  try {
    render_polar_svg(cells, bad, PolarVariant::Controllability);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(bad.string()), std::string::npos);
  }
}

TEST(TrajectorySvg, ColouredByAngularVelocity) {
  BallState s;
  s.x = 0.3;
  s.y = 1.0;
  const HybridTrajectory traj = run_surface(s, Parabola{0.5}, BallParams{}, 1e9, 10);
  std::ostringstream os;
  render_trajectory_svg(os, traj, BallParams{}, 0.5);
  const std::string svg = os.str();
  EXPECT_TRUE(tags_balanced(svg));
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  std::ostringstream again;
  render_trajectory_svg(again, traj, BallParams{}, 0.5);
  EXPECT_EQ(svg, again.str());
}
