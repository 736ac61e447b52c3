#include "impact_lab/svg_render.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace impact_lab {

namespace {

std::string fixed(double v, int digits = 3) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::fixed, digits);
  std::string s(buf.data(), res.ptr);
  return s == "-0.000" ? "0.000" : s;
}

constexpr std::array<std::string_view, 7> kBounceColors{
    "#000000",  // -1: no solution
    "#9e9e9e",  // 0
    "#1f77b4",  // 1
    "#2ca02c",  // 2
    "#ff7f0e",  // 3
    "#9467bd",  // 4
    "#d62728",  // 5
};

// Blue (negative) - white - red (positive); t in [-1, 1].
std::string diverging(double t) {
  t = std::clamp(t, -1.0, 1.0);
  auto channel = [](double a, double b, double s) {
    return static_cast<int>(std::lround(a + (b - a) * s));
  };
  int r = 0, g = 0, b = 0;
  if (t < 0.0) {
    r = channel(255, 33, -t);
    g = channel(255, 102, -t);
    b = channel(255, 172, -t);
  } else {
    r = channel(255, 178, t);
    g = channel(255, 24, t);
    b = channel(255, 43, t);
  }
  std::array<char, 8> hex{};
  static constexpr char digits[] = "0123456789abcdef";
  hex[0] = '#';
  const std::array<int, 3> rgb{r, g, b};
  for (int i = 0; i < 3; ++i) {
    hex[1 + 2 * i] = digits[(rgb[i] >> 4) & 0xf];
    hex[2 + 2 * i] = digits[rgb[i] & 0xf];
  }
  return std::string(hex.data(), 7);
}

}  // namespace

std::string_view bounce_color(int bounces) {
  if (bounces < -1 || bounces > 5) throw std::out_of_range("bounce count outside [-1, 5]");
  return kBounceColors[static_cast<std::size_t>(bounces + 1)];
}

void render_polar_svg(std::ostream& os, const std::vector<SweepCell>& cells,
                      PolarVariant variant) {
  if (cells.empty()) throw std::invalid_argument("render_polar_svg: no cells");
  constexpr double kSize = 640.0;
  constexpr double kCx = 300.0;
  constexpr double kCy = 320.0;
  constexpr double kRadius = 260.0;

  double t_max = 0.0;
  for (const SweepCell& c : cells) t_max = std::max(t_max, c.T);
  if (!(t_max > 0.0)) t_max = 1.0;

  const bool failure = variant == PolarVariant::Failure;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kSize + 160, 0)
     << "\" height=\"" << fixed(kSize, 0) << "\" viewBox=\"0 0 " << fixed(kSize + 160, 0) << ' '
     << fixed(kSize, 0) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
     << "<text x=\"" << fixed(kCx, 0) << "\" y=\"30\" text-anchor=\"middle\" font-size=\"16\">"
     << (failure ? "Targets without a solution" : "Minimum bounces per target")
     << "</text>\n";

  os << "<g id=\"axes\" fill=\"none\" stroke=\"#cccccc\">\n";
  for (int ring = 1; ring <= 4; ++ring) {
    os << "<circle cx=\"" << fixed(kCx) << "\" cy=\"" << fixed(kCy) << "\" r=\""
       << fixed(kRadius * ring / 4.0) << "\"/>\n";
  }
  for (int spoke = 0; spoke < 8; ++spoke) {
    const double a = spoke * std::numbers::pi / 4.0;
    os << "<line x1=\"" << fixed(kCx) << "\" y1=\"" << fixed(kCy) << "\" x2=\""
       << fixed(kCx + kRadius * std::cos(a)) << "\" y2=\"" << fixed(kCy - kRadius * std::sin(a))
       << "\"/>\n";
  }
  os << "</g>\n";
  for (int ring = 1; ring <= 4; ++ring) {
    os << "<text x=\"" << fixed(kCx + kRadius * ring / 4.0 + 2) << "\" y=\"" << fixed(kCy - 4)
       << "\" font-size=\"10\" fill=\"#666666\">T=" << fixed(t_max * ring / 4.0, 2)
       << "</text>\n";
  }

  os << "<g id=\"cells\">\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const SweepCell& c = cells[i];
    if (c.solved() == failure) continue;
    const double r = kRadius * c.T / t_max;
    os << "<circle data-cell=\"" << i << "\" cx=\"" << fixed(kCx + r * std::cos(c.theta_f))
       << "\" cy=\"" << fixed(kCy - r * std::sin(c.theta_f)) << "\" r=\"3\" fill=\""
       << bounce_color(std::clamp(c.bounces, -1, 5)) << "\"/>\n";
  }
  os << "</g>\n";

  os << "<g id=\"legend\" font-size=\"12\">\n";
  for (int b = -1; b <= 5; ++b) {
    const double y = 60.0 + 22.0 * (b + 1);
    os << "<circle cx=\"" << fixed(kSize) << "\" cy=\"" << fixed(y) << "\" r=\"6\" fill=\""
       << bounce_color(b) << "\"/>\n"
       << "<text x=\"" << fixed(kSize + 12) << "\" y=\"" << fixed(y + 4) << "\">"
       << (b < 0 ? std::string("no solution") : std::to_string(b) + " bounce" + (b == 1 ? "" : "s"))
       << "</text>\n";
  }
  os << "</g>\n</svg>\n";
}

void render_polar_svg(const std::vector<SweepCell>& cells, const std::filesystem::path& path,
                      PolarVariant variant) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  render_polar_svg(out, cells, variant);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void render_trajectory_svg(std::ostream& os, const HybridTrajectory& traj, const BallParams& p,
                           std::optional<double> parabola_alpha) {
  constexpr int kSamples = 24;
  std::vector<BallState> pts;
  for (const FlightArc& arc : traj.arcs) {
    for (int j = 0; j <= kSamples; ++j) pts.push_back(propagate(arc.start, arc.duration * j / kSamples, p));
  }
  double xmin = -0.5, xmax = 0.5, ymin = 0.0, ymax = 1.0, wmax = 0.0;
  for (const BallState& s : pts) {
    xmin = std::min(xmin, s.x - p.R);
    xmax = std::max(xmax, s.x + p.R);
    ymin = std::min(ymin, s.y - p.R);
    ymax = std::max(ymax, s.y + p.R);
    wmax = std::max(wmax, std::abs(s.omega));
  }
  const double margin = 0.05 * std::max(xmax - xmin, ymax - ymin);
  xmin -= margin;
  xmax += margin;
  ymin -= margin;
  ymax += margin;

  constexpr double kWidth = 640.0;
  const double scale = kWidth / (xmax - xmin);
  const double height = (ymax - ymin) * scale;
  auto sx = [&](double x) { return fixed((x - xmin) * scale); };
  auto sy = [&](double y) { return fixed((ymax - y) * scale); };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kWidth, 0) << "\" height=\""
     << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(kWidth, 0) << ' ' << fixed(height, 0)
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  if (parabola_alpha) {
    os << "<polyline fill=\"none\" stroke=\"#444444\" stroke-width=\"2\" points=\"";
    constexpr int kCurve = 200;
    for (int i = 0; i <= kCurve; ++i) {
      const double x = xmin + (xmax - xmin) * i / kCurve;
      os << (i ? " " : "") << sx(x) << ',' << sy(*parabola_alpha * x * x);
    }
    os << "\"/>\n";
  } else {
    for (const ImpactEvent& ev : traj.events) {
      const double phi = local_contact_frame(ev.pre, ev.surface);
      // Contact point lies R below the centre along the surface normal.
      const double cx = ev.pre.x + p.R * std::sin(phi);
      const double cy = ev.pre.y - p.R * std::cos(phi);
      const double half = 0.15;
      os << "<line stroke=\"#444444\" stroke-width=\"2\" x1=\"" << sx(cx - half * std::cos(phi))
         << "\" y1=\"" << sy(cy - half * std::sin(phi)) << "\" x2=\""
         << sx(cx + half * std::cos(phi)) << "\" y2=\"" << sy(cy + half * std::sin(phi))
         << "\"/>\n";
    }
  }

  os << "<g id=\"path\" stroke-width=\"2\">\n";
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i].t == pts[i + 1].t) continue;
    const double c = wmax > 0.0 ? pts[i].omega / wmax : 0.0;
    os << "<line x1=\"" << sx(pts[i].x) << "\" y1=\"" << sy(pts[i].y) << "\" x2=\""
       << sx(pts[i + 1].x) << "\" y2=\"" << sy(pts[i + 1].y) << "\" stroke=\""
       << diverging(c) << "\"/>\n";
  }
  os << "</g>\n<text x=\"8\" y=\"16\" font-size=\"12\">omega colour scale: +-"
     << fixed(wmax, 3) << " rad/s (blue negative, red positive)</text>\n</svg>\n";
}

}  // namespace impact_lab
