#include "impact_lab/impact_laws.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace impact_lab {

namespace {

struct FlatMomenta {
  double px = 0.0;
  double py = 0.0;
  double ptheta = 0.0;
};

void require_on_guard(const BallState& s, const Surface& surf, const BallParams& p,
                      const char* who) {
  const double h = guard_value(s, surf, p);
  if (!(std::abs(h) <= kGuardTolerance)) {
    std::ostringstream msg;
    msg << who << ": state is not on the guard (h = " << h << ")";
    throw ImpactError(msg.str());
  }
  const double dh = guard_rate(s, surf, p);
  if (!(dh > 0.0)) {
    std::ostringstream msg;
    msg << who << ": guard rate " << dh << " is not positive; no impact";
    throw ImpactError(msg.str());
  }
}

// Level-table rolling law in momentum form; w is the normal speed of the table.
FlatMomenta flat_rolling_momenta(double px, double py, double ptheta, double w,
                                 const BallParams& p) {
  const double m = p.m;
  const double I = p.I;
  const double R = p.R;
  const double locked = I + m * R * R;
  const double slip = R * px - ptheta;
  const double py_rel = py - m * w;

  FlatMomenta out;
  out.px = R * m / locked * slip;
  out.ptheta = I / locked * (ptheta - R * px);
  const double radicand =
      px * px + py_rel * py_rel + (m / I) * ptheta * ptheta - m / locked * slip * slip;
  if (radicand < 0.0) {
    std::ostringstream msg;
    msg << "rolling reset: negative radicand " << radicand
        << "; no admissible elastic impact";
    throw ImpactError(msg.str());
  }
  out.py = std::sqrt(radicand) + m * w;
  return out;
}

double norm2(const GuardGradient& dh) { return std::hypot(dh.hx, dh.hy); }

}  // namespace

double contact_angular_momentum(const BallState& s, double phi, const BallParams& p) {
  return s.ptheta(p) - p.R * (s.px(p) * std::cos(phi) + s.py(p) * std::sin(phi));
}

ImpactOutcome slippery_reflect(const BallState& s, const Surface& surf, const BallParams& p) {
  const GuardGradient dh = guard_gradient(s, surf);
  const double nn = dh.hx * dh.hx + dh.hy * dh.hy;
  const double normal_rate = dh.hx * s.vx + dh.hy * s.vy;

  ImpactOutcome out;
  out.epsilon = -2.0 * p.m * normal_rate / nn;
  out.post = s;
  out.post.vx = s.vx + out.epsilon * dh.hx / p.m;
  out.post.vy = s.vy + out.epsilon * dh.hy / p.m;
  out.energy_delta = energy(out.post, p).total - energy(s, p).total;
  return out;
}

ImpactOutcome slippery_reset(const BallState& s, const Surface& surf, const BallParams& p) {
  if (!is_stationary(surf)) {
    throw ImpactError("slippery_reset: moving surface; use impact_equation_solve");
  }
  require_on_guard(s, surf, p, "slippery_reset");
  return slippery_reflect(s, surf, p);
}

ImpactOutcome rolling_reset_flat(const BallState& s, const TableConfig& table,
                                 const BallParams& p) {
  if (table.u != 0.0) {
    throw std::invalid_argument("rolling_reset_flat: table must be level (u = 0)");
  }
  const Surface surf = Plane{table};
  require_on_guard(s, surf, p, "rolling_reset_flat");

  const double w = table.du * s.x + table.dv;
  const FlatMomenta after = flat_rolling_momenta(s.px(p), s.py(p), s.ptheta(p), w, p);

  ImpactOutcome out;
  out.post = s;
  out.post.vx = after.px / p.m;
  out.post.vy = after.py / p.m;
  out.post.omega = after.ptheta / p.I;
  out.lambda = after.px - s.px(p);
  out.epsilon = -(after.py - s.py(p));
  out.energy_delta = energy(out.post, p).total - energy(s, p).total;
  return out;
}

ImpactOutcome rolling_reset(const BallState& s, const Surface& surf, const BallParams& p) {
  if (!is_stationary(surf)) {
    throw ImpactError("rolling_reset: moving surface; use impact_equation_solve");
  }
  require_on_guard(s, surf, p, "rolling_reset");

  const double phi = local_contact_frame(s, surf);
  const BallState local = rotate_frame(s, phi);
  const FlatMomenta after =
      flat_rolling_momenta(local.px(p), local.py(p), local.ptheta(p), 0.0, p);

  BallState local_post = local;
  local_post.vx = after.px / p.m;
  local_post.vy = after.py / p.m;
  local_post.omega = after.ptheta / p.I;
  const BallState back = rotate_frame(local_post, -phi);

  ImpactOutcome out;
  out.post = s;
  out.post.vx = back.vx;
  out.post.vy = back.vy;
  out.post.omega = back.omega;
  out.lambda = after.px - local.px(p);
  // The contact frame uses the unit normal; rescale to the unnormalised d_x h.
  out.epsilon = -(after.py - local.py(p)) / norm2(guard_gradient(s, surf));
  out.energy_delta = energy(out.post, p).total - energy(s, p).total;
  return out;
}

ImpactOutcome impact_equation_solve(const BallState& s, const Surface& surf,
                                    const BallParams& p, ImpactLaw law) {
  require_on_guard(s, surf, p, "impact_equation_solve");

  const double m = p.m;
  const double I = p.I;
  const std::array<double, 3> minv{1.0 / m, 1.0 / m, 1.0 / I};
  const std::array<double, 3> mass{m, m, I};
  const std::array<double, 3> v{s.vx, s.vy, s.omega};

  const GuardGradient dh = guard_gradient(s, surf);
  const std::array<double, 3> n{dh.hx, dh.hy, 0.0};
  const double phi = local_contact_frame(s, surf);
  const std::array<double, 3> c{std::cos(phi), std::sin(phi), p.R};
  const double ht = guard_time_rate(s, surf);

  auto dot = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };
  auto weighted = [](const std::array<double, 3>& a, const std::array<double, 3>& w,
                     const std::array<double, 3>& b) {
    return a[0] * w[0] * b[0] + a[1] * w[1] * b[1] + a[2] * w[2] * b[2];
  };

  // v+ = v0 + eps * d, with lambda eliminated through the constraint (if any).
  std::array<double, 3> v0 = v;
  std::array<double, 3> d{};
  double lambda0 = 0.0;
  double lambda_per_eps = 0.0;
  if (law == ImpactLaw::Rolling) {
    const double cc = weighted(c, minv, c);
    lambda0 = -dot(c, v) / cc;
    lambda_per_eps = -weighted(c, minv, n) / cc;
  }
  for (int i = 0; i < 3; ++i) {
    v0[i] = v[i] + minv[i] * lambda0 * c[i];
    d[i] = minv[i] * (n[i] + lambda_per_eps * c[i]);
  }

  // Energy balance: T(v0 + eps d) - T(v) + eps * ht = 0.
  const double qa = 0.5 * weighted(d, mass, d);
  const double qb = weighted(v0, mass, d) + ht;
  const double qc = 0.5 * weighted(v0, mass, v0) - 0.5 * weighted(v, mass, v);

  std::array<double, 2> roots{std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::quiet_NaN()};
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc >= 0.0 && qa > 0.0) {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (qb + std::copysign(sq, qb));
    if (q != 0.0) {
      roots = {q / qa, qc / q};
    } else {
      roots = {0.0, 0.0};
    }
  }

  bool found = false;
  ImpactOutcome best;
  for (double eps : roots) {
    if (!std::isfinite(eps) || !(eps < 0.0)) continue;
    BallState post = s;
    post.vx = v0[0] + eps * d[0];
    post.vy = v0[1] + eps * d[1];
    post.omega = v0[2] + eps * d[2];
    if (!(guard_rate(post, surf, p) < 0.0)) continue;
    if (found && !(eps < best.epsilon)) continue;
    best.post = post;
    best.epsilon = eps;
    best.lambda = lambda0 + lambda_per_eps * eps;
    found = true;
  }
  if (!found) {
    throw ImpactError("impact_equation_solve: no departing post-impact state exists");
  }
  best.energy_delta = energy(best.post, p).total - energy(s, p).total;
  return best;
}

ImpactOutcome apply_impact(const BallState& s, const Surface& surf, const BallParams& p,
                           ImpactLaw law) {
  const bool stationary = is_stationary(surf);
  if (law == ImpactLaw::Slippery) {
    return stationary ? slippery_reset(s, surf, p)
                      : impact_equation_solve(s, surf, p, ImpactLaw::Slippery);
  }
  if (stationary) return rolling_reset(s, surf, p);
  if (const auto* pl = std::get_if<Plane>(&surf); pl && pl->table.u == 0.0) {
    return rolling_reset_flat(s, pl->table, p);
  }
  return impact_equation_solve(s, surf, p, ImpactLaw::Rolling);
}

std::array<double, 5> impact_residuals(const BallState& pre, const ImpactOutcome& out,
                                       const Surface& surf, const BallParams& p,
                                       ImpactLaw law) {
  const GuardGradient dh = guard_gradient(pre, surf);
  const double phi = local_contact_frame(pre, surf);
  const double cphi = std::cos(phi);
  const double sphi = std::sin(phi);
  const double ht = guard_time_rate(pre, surf);
  const double lambda = law == ImpactLaw::Rolling ? out.lambda : 0.0;
  const BallState& post = out.post;

  std::array<double, 5> r{};
  r[0] = p.m * (post.vx - pre.vx) - out.epsilon * dh.hx - lambda * cphi;
  r[1] = p.m * (post.vy - pre.vy) - out.epsilon * dh.hy - lambda * sphi;
  r[2] = p.I * (post.omega - pre.omega) - lambda * p.R;
  r[3] = (energy(pre, p).total - energy(post, p).total) - out.epsilon * ht;
  r[4] = law == ImpactLaw::Rolling ? p.R * post.omega + post.vx * cphi + post.vy * sphi : 0.0;
  return r;
}

}  // namespace impact_lab
