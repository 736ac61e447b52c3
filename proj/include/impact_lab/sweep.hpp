#pragma once

// Polar controllability sweep over (theta_f, T).

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <vector>

#include "impact_lab/shooting.hpp"

namespace impact_lab {

/// Both axes are sampled with inclusive endpoints.
struct SweepGrid {
  double theta_min = 0.0;
  double theta_max = 2.0 * std::numbers::pi;
  int n_theta = 100;
  double T_min = 0.1;
  double T_max = 1.5;
  int n_T = 40;

  void validate() const;
  double theta_at(int i) const;
  double T_at(int j) const;
  std::size_t size() const { return static_cast<std::size_t>(n_theta) * n_T; }
};

struct SweepCell {
  double theta_f = 0.0;
  double T = 0.0;
  int bounces = -1;  ///< -1 when no schedule reached epsilon
  double error = 0.0;
  std::vector<double> controls;

  bool solved() const { return bounces >= 0; }
};

/// Seed of the cell at row-major index `index`.
std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t index);

/// Solves every cell; output is row-major (theta outer, T inner) and does not
/// depend on `threads`.
std::vector<SweepCell> run_sweep(const SweepGrid& grid, const BallParams& p,
                                 const SolverConfig& cfg, std::uint64_t seed,
                                 int threads = 1);

/// Columns theta_f,T,bounces,error,controls; controls as u:v pairs joined by ';'.
void write_sweep_csv(std::ostream& os, const std::vector<SweepCell>& cells);

}  // namespace impact_lab
