#include "impact_lab/core_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace impact_lab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string("BallParams.") + name +
                                " must be positive and finite");
  }
}

}  // namespace

void BallParams::validate() const {
  require_positive(m, "m");
  require_positive(I, "I");
  require_positive(R, "R");
  require_positive(g, "g");
}

bool BallState::finite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(theta) &&
         std::isfinite(vx) && std::isfinite(vy) && std::isfinite(omega) &&
         std::isfinite(t);
}

double guard_value(const BallState& s, const Surface& surf, const BallParams& p) {
  return std::visit(
      Overloaded{
          [&](const Plane& pl) {
            const TableConfig& tb = pl.table;
            return s.x * std::sin(tb.u) - s.y * std::cos(tb.u) + p.R + tb.v;
          },
          [&](const Parabola& pa) { return pa.alpha * s.x * s.x - s.y + p.R; },
      },
      surf);
}

double guard_time_rate(const BallState& s, const Surface& surf) {
  if (const auto* pl = std::get_if<Plane>(&surf)) {
    const TableConfig& tb = pl->table;
    return (s.x * std::cos(tb.u) + s.y * std::sin(tb.u)) * tb.du + tb.dv;
  }
  return 0.0;
}

GuardGradient guard_gradient(const BallState& s, const Surface& surf) {
  return std::visit(
      Overloaded{
          [](const Plane& pl) {
            return GuardGradient{std::sin(pl.table.u), -std::cos(pl.table.u)};
          },
          [&](const Parabola& pa) { return GuardGradient{2.0 * pa.alpha * s.x, -1.0}; },
      },
      surf);
}

double guard_rate(const BallState& s, const Surface& surf, const BallParams& /*p*/) {
  const GuardGradient dh = guard_gradient(s, surf);
  return dh.hx * s.vx + dh.hy * s.vy + guard_time_rate(s, surf);
}

EnergyBreakdown energy(const BallState& s, const BallParams& p) {
  EnergyBreakdown e;
  e.kinetic = 0.5 * p.m * (s.vx * s.vx + s.vy * s.vy) + 0.5 * p.I * s.omega * s.omega;
  e.potential = p.m * p.g * s.y;
  e.total = e.kinetic + e.potential;
  return e;
}

BallState rotate_frame(const BallState& s, double phi) {
  const double c = std::cos(phi);
  const double sn = std::sin(phi);
  BallState r = s;
  r.x = c * s.x + sn * s.y;
  r.y = -sn * s.x + c * s.y;
  r.vx = c * s.vx + sn * s.vy;
  r.vy = -sn * s.vx + c * s.vy;
  return r;
}

double local_contact_frame(const BallState& s, const Surface& surf) {
  return std::visit(Overloaded{
                        [](const Plane& pl) { return pl.table.u; },
                        [&](const Parabola& pa) { return std::atan(2.0 * pa.alpha * s.x); },
                    },
                    surf);
}

bool is_stationary(const Surface& surf) {
  if (const auto* pl = std::get_if<Plane>(&surf)) return pl->table.stationary();
  return true;
}

}  // namespace impact_lab
