#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "impact_lab/hybrid_executor.hpp"
#include "impact_lab/sweep.hpp"

namespace impact_lab {

/// Controllability draws solved cells coloured by bounce count; Failure draws
/// only the unsolved ones. Each drawn marker carries data-cell="<index>".
enum class PolarVariant { Controllability, Failure };

/// Fixed legend colour for a bounce count in [-1, 5].
std::string_view bounce_color(int bounces);

/// Polar scatter: angle = theta_f, radius proportional to T. Output bytes depend
/// only on the inputs.
void render_polar_svg(std::ostream& os, const std::vector<SweepCell>& cells,
                      PolarVariant variant);
void render_polar_svg(const std::vector<SweepCell>& cells, const std::filesystem::path& path,
                      PolarVariant variant);

/// Flight path coloured by angular velocity on a diverging scale clipped at
/// +-max|omega|. When `parabola_alpha` is set the surface is drawn as well;
/// otherwise the table at each impact is drawn as a short segment.
void render_trajectory_svg(std::ostream& os, const HybridTrajectory& traj, const BallParams& p,
                           std::optional<double> parabola_alpha = std::nullopt);

}  // namespace impact_lab
