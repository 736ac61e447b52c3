#include "impact_lab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "impact_lab/number_format.hpp"

namespace impact_lab {

void SweepGrid::validate() const {
  if (n_theta < 1 || n_T < 1) throw std::invalid_argument("sweep resolution must be >= 1");
  if (!(theta_max >= theta_min) || !(T_max >= T_min)) {
    throw std::invalid_argument("sweep ranges must be nonempty");
  }
  if (!(T_min > 0.0)) throw std::invalid_argument("sweep T range must be positive");
}

namespace {
double linspace(double lo, double hi, int n, int i) {
  return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
}
}  // namespace

double SweepGrid::theta_at(int i) const { return linspace(theta_min, theta_max, n_theta, i); }
double SweepGrid::T_at(int j) const { return linspace(T_min, T_max, n_T, j); }

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t index) {
  return mix_seed(master_seed, static_cast<std::uint64_t>(index));
}

std::vector<SweepCell> run_sweep(const SweepGrid& grid, const BallParams& p,
                                 const SolverConfig& cfg, std::uint64_t seed, int threads) {
  grid.validate();
  std::vector<SweepCell> cells(grid.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t idx = next++; idx < cells.size(); idx = next++) {
      const int i = static_cast<int>(idx / grid.n_T);
      const int j = static_cast<int>(idx % grid.n_T);
      TargetSpec target;
      target.theta_f = grid.theta_at(i);
      target.T = grid.T_at(j);

      const SolveReport rep = solve_report(target, p, cfg, cell_seed(seed, idx));
      SweepCell& cell = cells[idx];
      cell.theta_f = target.theta_f;
      cell.T = target.T;
      if (rep.accepted) {
        cell.bounces = rep.accepted->bounce_count;
        cell.error = rep.accepted->error;
        cell.controls = rep.accepted->controls;
      } else {
        cell.bounces = -1;
        cell.error = rep.best_error;
      }
    }
  };

  const int width = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(1, cells.size())));
  if (width == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < width; ++t) pool.emplace_back(worker);
  }
  return cells;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
  os << "theta_f,T,bounces,error,controls\n";
  for (const SweepCell& c : cells) {
    os << format_double(c.theta_f) << ',' << format_double(c.T) << ',' << c.bounces << ','
       << format_double(c.error) << ',';
    for (std::size_t k = 0; k + 1 < c.controls.size(); k += 2) {
      if (k > 0) os << ';';
      os << format_double(c.controls[k]) << ':' << format_double(c.controls[k + 1]);
    }
    os << '\n';
  }
}

}  // namespace impact_lab
