#include "godron/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

#include "godron/error.hpp"

namespace godron {

namespace {

constexpr double kPanel = 300.0;
constexpr double kMargin = 24.0;
constexpr double kGap = 24.0;
constexpr double kLegendHeight = 96.0;

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Layout {
  int columns = 1;
  int rows = 1;
  double s_min = 0.0, s_max = 1.0, t_min = 0.0, t_max = 1.0;

  double width() const { return 2.0 * kMargin + columns * kPanel + (columns - 1) * kGap; }
  double panels_height() const { return 2.0 * kMargin + rows * kPanel + (rows - 1) * kGap; }
  double x0(int chart) const { return kMargin + (chart % columns) * (kPanel + kGap); }
  double y0(int chart) const { return kMargin + (chart / columns) * (kPanel + kGap); }
  double x(int chart, double s) const { return x0(chart) + (s - s_min) / (s_max - s_min) * kPanel; }
  double y(int chart, double t) const { return y0(chart) + (1.0 - (t - t_min) / (t_max - t_min)) * kPanel; }
};

Layout layout_for(const SurfaceSpec& spec) {
  Layout l;
  if (spec.domain == DomainKind::cube_sphere) {
    l.columns = 3;
    l.rows = 2;
  }
  l.s_min = spec.s_min;
  l.s_max = spec.s_max;
  l.t_min = spec.t_min;
  l.t_max = spec.t_max;
  return l;
}

void write_fills(std::ostringstream& out, const Layout& l, const Analysis& a) {
  if (!a.parabolic.contour) return;
  const Contour& contour = *a.parabolic.contour;
  const DomainMesh& mesh = contour.mesh();
  const SurfaceSpec& spec = *a.spec;
  const bool torus = spec.domain == DomainKind::torus;
  const double ps = spec.s_max - spec.s_min, pt = spec.t_max - spec.t_min;

  // Torus cells straddle the period; draw the shifted copies too and clip to the panel.
  auto shifts = [&](double lo_s, double hi_s, double lo_t, double hi_t) {
    std::vector<std::pair<double, double>> out_shifts{{0.0, 0.0}};
    if (!torus) return out_shifts;
    const bool ws = hi_s > spec.s_max || lo_s < spec.s_min, wt = hi_t > spec.t_max || lo_t < spec.t_min;
    const double ds = hi_s > spec.s_max ? -ps : ps, dt = hi_t > spec.t_max ? -pt : pt;
    if (ws) out_shifts.push_back({ds, 0.0});
    if (wt) out_shifts.push_back({0.0, dt});
    if (ws && wt) out_shifts.push_back({ds, dt});
    return out_shifts;
  };

  // Uncut cells merge into runs along rows; cut pieces are drawn as polygons.
  std::map<std::tuple<int, int, int>, std::vector<int>> runs;  // (sign, chart, j) -> i
  std::ostringstream polys[2];
  for (const auto& piece : contour.pieces()) {
    const auto& cell = mesh.cells()[piece.cell];
    const bool whole = piece.ring.size() == 4 &&
                       std::none_of(piece.ring.begin(), piece.ring.end(), [](const auto& n) { return n.crossing; });
    if (whole) {
      runs[{piece.sign, cell.chart, cell.j}].push_back(cell.i);
      continue;
    }
    double lo_s = 1e300, hi_s = -1e300, lo_t = 1e300, hi_t = -1e300;
    for (const auto& n : piece.ring) {
      lo_s = std::min(lo_s, n.local.s);
      hi_s = std::max(hi_s, n.local.s);
      lo_t = std::min(lo_t, n.local.t);
      hi_t = std::max(hi_t, n.local.t);
    }
    std::ostringstream& o = polys[piece.sign > 0 ? 0 : 1];
    for (const auto& [ds, dt] : shifts(lo_s, hi_s, lo_t, hi_t)) {
      o << "M";
      for (std::size_t k = 0; k < piece.ring.size(); ++k) {
        const auto& n = piece.ring[k];
        o << (k ? " " : "") << num(l.x(cell.chart, n.local.s + ds)) << "," << num(l.y(cell.chart, n.local.t + dt));
      }
      o << "Z";
    }
  }

  // Cells of a row share their t extent; look one up per (chart, j) run.
  std::map<std::tuple<int, int, int>, std::size_t> cell_of;
  for (std::size_t ci = 0; ci < mesh.cells().size(); ++ci) {
    const auto& c = mesh.cells()[ci];
    cell_of[{c.chart, c.i, c.j}] = ci;
  }
  for (int sign : {1, -1}) {
    std::ostringstream& o = polys[sign > 0 ? 0 : 1];
    for (auto& [key, is] : runs) {
      if (std::get<0>(key) != sign) continue;
      const int chart = std::get<1>(key), j = std::get<2>(key);
      std::sort(is.begin(), is.end());
      for (std::size_t k = 0; k < is.size();) {
        std::size_t e = k;
        while (e + 1 < is.size() && is[e + 1] == is[e] + 1) ++e;
        const auto& first = mesh.cells()[cell_of.at({chart, is[k], j})];
        const auto& last = mesh.cells()[cell_of.at({chart, is[e], j})];
        const double s0 = first.corner[0].s, s1 = last.corner[2].s;
        const double t0 = first.corner[0].t, t1 = first.corner[2].t;
        for (const auto& [ds, dt] : shifts(s0, s1, t0, t1)) {
          o << "M" << num(l.x(chart, s0 + ds)) << "," << num(l.y(chart, t0 + dt)) << " H"
            << num(l.x(chart, s1 + ds)) << " V" << num(l.y(chart, t1 + dt)) << " H" << num(l.x(chart, s0 + ds))
            << "Z";
        }
        k = e + 1;
      }
    }
  }
  out << "<g id=\"regions\" clip-path=\"url(#domain)\">\n";
  if (!polys[0].str().empty()) out << "<path class=\"elliptic\" d=\"" << polys[0].str() << "\"/>\n";
  if (!polys[1].str().empty()) out << "<path class=\"hyperbolic\" d=\"" << polys[1].str() << "\"/>\n";
  out << "</g>\n";
}

void write_trace(std::ostringstream& out, const Layout& l, const SurfaceSpec& spec, const CurveTrace& trace,
                 const char* id) {
  std::ostringstream d;
  const double half_s = 0.5 * (spec.s_max - spec.s_min), half_t = 0.5 * (spec.t_max - spec.t_min);
  for (const auto& pl : trace.polylines) {
    std::vector<ChartPoint> pts = pl.points;
    if (pl.closed && !pts.empty()) pts.push_back(pts.front());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const ChartPoint& p = pts[k];
      // Break the path across charts and periods.
      const bool jump = k == 0 || pts[k - 1].chart != p.chart || std::abs(pts[k - 1].s - p.s) > half_s ||
                        std::abs(pts[k - 1].t - p.t) > half_t;
      d << (jump ? "M" : " L") << num(l.x(p.chart, p.s)) << "," << num(l.y(p.chart, p.t));
    }
  }
  out << "<g id=\"" << id << "\">\n";
  if (!d.str().empty()) out << "<path class=\"" << id << "\" d=\"" << d.str() << "\"/>\n";
  out << "</g>\n";
}

std::string marker(CharKind kind, int sign, double x, double y) {
  const char* fill_class = sign > 0 ? "pos" : "neg";
  std::ostringstream o;
  switch (kind) {
    case CharKind::ellipnode:
      o << "<circle class=\"ellipnode " << fill_class << "\" cx=\"" << num(x) << "\" cy=\"" << num(y)
        << "\" r=\"5\"/>";
      break;
    case CharKind::hyperbonode:
      o << "<rect class=\"hyperbonode " << fill_class << "\" x=\"" << num(x - 5) << "\" y=\"" << num(y - 5)
        << "\" width=\"10\" height=\"10\"/>";
      break;
    case CharKind::godron:
      o << "<polygon class=\"godron " << fill_class << "\" points=\"" << num(x) << "," << num(y - 6) << " "
        << num(x + 5.5) << "," << num(y + 4) << " " << num(x - 5.5) << "," << num(y + 4) << "\"/>";
      break;
  }
  return o.str();
}

void write_points(std::ostringstream& out, const Layout& l, const std::vector<CharPoint>& pts, const char* id) {
  out << "<g id=\"" << id << "\">\n";
  for (const auto& p : pts) out << marker(p.kind, p.sign, l.x(p.param.chart, p.param.s), l.y(p.param.chart, p.param.t)) << "\n";
  out << "</g>\n";
}

void write_legend(std::ostringstream& out, double y, double width) {
  out << "<g id=\"legend\" transform=\"translate(" << num(kMargin) << "," << num(y) << ")\">\n";
  out << "<rect class=\"legend-box\" x=\"0\" y=\"0\" width=\"" << num(width - 2 * kMargin) << "\" height=\""
      << num(kLegendHeight - 12) << "\"/>\n";
  const double col = (width - 2 * kMargin) / 3.0;
  auto label = [&](double x, double yy, const char* text) {
    out << "<text x=\"" << num(x + 22) << "\" y=\"" << num(yy + 4) << "\">" << text << "</text>\n";
  };
  double x = 10, yy = 18;
  out << "<rect class=\"elliptic\" x=\"" << num(x) << "\" y=\"" << num(yy - 6) << "\" width=\"14\" height=\"12\"/>\n";
  label(x, yy, "elliptic (H &gt; 0)");
  out << "<rect class=\"hyperbolic\" x=\"" << num(x) << "\" y=\"" << num(yy + 18) << "\" width=\"14\" height=\"12\"/>\n";
  label(x, yy + 24, "hyperbolic (H &lt; 0)");
  out << "<path class=\"parabolic\" d=\"M" << num(x) << "," << num(yy + 48) << " H" << num(x + 14) << "\"/>\n";
  label(x, yy + 48, "parabolic curve");
  x = col + 10;
  out << "<path class=\"flecnodal\" d=\"M" << num(x) << "," << num(yy) << " H" << num(x + 14) << "\"/>\n";
  label(x, yy, "flecnodal curve");
  out << marker(CharKind::ellipnode, 1, x + 7, yy + 24) << "\n";
  label(x, yy + 24, "ellipnode");
  out << marker(CharKind::hyperbonode, 1, x + 7, yy + 48) << "\n";
  label(x, yy + 48, "hyperbonode");
  x = 2 * col + 10;
  out << marker(CharKind::godron, 1, x + 7, yy) << "\n";
  label(x, yy, "godron");
  out << marker(CharKind::ellipnode, 1, x + 7, yy + 24) << "\n";
  label(x, yy + 24, "filled: sign +1");
  out << marker(CharKind::ellipnode, -1, x + 7, yy + 48) << "\n";
  label(x, yy + 48, "hollow: sign -1");
  out << "</g>\n";
}

constexpr const char* kStyle =
    "<style>\n"
    ".elliptic{fill:#f4e6c1;stroke:none}\n"
    ".hyperbolic{fill:#3f5573;stroke:none}\n"
    ".parabolic{fill:none;stroke:#111;stroke-width:1.6}\n"
    ".flecnodal{fill:none;stroke:#c2185b;stroke-width:1.2;stroke-dasharray:5 3}\n"
    ".ellipnode,.hyperbonode,.godron{stroke-width:1.5}\n"
    ".ellipnode{stroke:#b03a2e}.ellipnode.pos{fill:#e74c3c}\n"
    ".hyperbonode{stroke:#1a5276}.hyperbonode.pos{fill:#3498db}\n"
    ".godron{stroke:#196f3d}.godron.pos{fill:#2ecc71}\n"
    ".neg{fill:#fff}\n"
    ".frame{fill:none;stroke:#666;stroke-width:1}\n"
    ".legend-box{fill:#fff;stroke:#999}\n"
    "text{font-family:sans-serif;font-size:12px;fill:#222}\n"
    "</style>\n";

}  // namespace

std::string render_svg(const Analysis& a) {
  Layout l;
  if (a.spec) l = layout_for(*a.spec);
  // The legend needs three readable columns even above a single panel.
  const double width = std::max(a.spec ? l.width() : 0.0, 660.0);
  const double legend_y = a.spec ? l.panels_height() - kMargin + 12.0 : kMargin;
  const double height = legend_y + kLegendHeight;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  out << "<title>" << escape(a.surface_id.empty() ? std::string("analysis") : a.surface_id) << "</title>\n";
  out << kStyle;
  if (a.spec) {
    const int charts = a.spec->chart_count();
    out << "<defs><clipPath id=\"domain\">";
    for (int c = 0; c < charts; ++c)
      out << "<rect x=\"" << num(l.x0(c)) << "\" y=\"" << num(l.y0(c)) << "\" width=\"" << num(kPanel)
          << "\" height=\"" << num(kPanel) << "\"/>";
    out << "</clipPath></defs>\n";
    write_fills(out, l, a);
    write_trace(out, l, *a.spec, a.parabolic, "parabolic");
    write_trace(out, l, *a.spec, a.flecnodal, "flecnodal");
    write_points(out, l, a.nodes, "nodes");
    write_points(out, l, a.godrons, "godrons");
    out << "<g id=\"frames\">\n";
    for (int c = 0; c < charts; ++c) {
      out << "<rect class=\"frame\" x=\"" << num(l.x0(c)) << "\" y=\"" << num(l.y0(c)) << "\" width=\""
          << num(kPanel) << "\" height=\"" << num(kPanel) << "\"/>\n";
      if (charts > 1)
        out << "<text x=\"" << num(l.x0(c) + 4) << "\" y=\"" << num(l.y0(c) - 6) << "\">chart " << c << "</text>\n";
    }
    out << "</g>\n";
  }
  write_legend(out, legend_y, width);
  out << "</svg>\n";
  return out.str();
}

void write_svg(const Analysis& a, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << render_svg(a);
  if (!f) throw Error("failed writing '" + path + "'");
}

}  // namespace godron
