// Copyright 2026 The ampl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Minimal deterministic SVG rendering: a top-down scene view with corridor
// cross-sections and generic time-series panels.

#ifndef AMPL_PLOT_HPP_
#define AMPL_PLOT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ampl/corridor.hpp"
#include "ampl/grid.hpp"

namespace ampl {
namespace plot {

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", x);
  return buf;
}

// Convex cross-section of a polyhedron with the horizontal plane at height z,
// returned as a counter-clockwise polygon (possibly empty).
inline std::vector<Vec2> cross_section(const Polyhedron& poly, double z) {
  struct Line {
    Vec2 n;
    double b;
  };
  std::vector<Line> lines;
  for (const Halfplane& h : poly.halfplanes) {
    lines.push_back({Vec2(h.n.x(), h.n.y()), h.b - h.n.z() * z});
  }
  std::vector<Vec2> pts;
  const int m = static_cast<int>(lines.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double det = lines[i].n.x() * lines[j].n.y() -
                         lines[i].n.y() * lines[j].n.x();
      if (std::abs(det) < 1e-12) continue;
      const Vec2 p(
          (lines[i].b * lines[j].n.y() - lines[j].b * lines[i].n.y()) / det,
          (lines[i].n.x() * lines[j].b - lines[j].n.x() * lines[i].b) / det);
      bool inside = true;
      for (const Line& l : lines) {
        if (l.n.dot(p) > l.b + 1e-7) {
          inside = false;
          break;
        }
      }
      if (inside) pts.push_back(p);
    }
  }
  if (pts.size() < 3) return {};
  Vec2 c = Vec2::Zero();
  for (const Vec2& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&c](const Vec2& a, const Vec2& b) {
    return std::atan2(a.y() - c.y(), a.x() - c.x()) <
           std::atan2(b.y() - c.y(), b.x() - c.x());
  });
  std::vector<Vec2> out;
  for (const Vec2& p : pts) {
    if (out.empty() || (p - out.back()).norm() > 1e-9) out.push_back(p);
  }
  return out;
}

namespace detail {

// World-to-pixel mapping with y flipped (SVG grows downward).
struct View {
  double x0, y0, x1, y1, w, h, pad;

  double sx(double x) const {
    return pad + (x - x0) / (x1 - x0) * (w - 2 * pad);
  }
  double sy(double y) const {
    return h - pad - (y - y0) / (y1 - y0) * (h - 2 * pad);
  }
};

inline void polyline(std::string& svg, const View& v,
                     const std::vector<Vec2>& pts, const char* style,
                     bool close) {
  if (pts.empty()) return;
  svg += close ? "<polygon points=\"" : "<polyline points=\"";
  for (const Vec2& p : pts) {
    svg += fmt(v.sx(p.x())) + "," + fmt(v.sy(p.y())) + " ";
  }
  svg.pop_back();
  svg += "\" style=\"";
  svg += style;
  svg += "\"/>\n";
}

}  // namespace detail

// Top-down xy view: world bounds, box obstacles, corridor cross-sections at
// the supplied heights (one per polyhedron) and the quadrotor path.
inline std::string svg_topdown(const WorldGeom& world, const Corridor& corridor,
                               const std::vector<double>& slice_z,
                               const std::vector<Vec2>& track) {
  const double w = 720.0, h = 560.0;
  detail::View v{world.bounds.lo.x(), world.bounds.lo.y(),
                 world.bounds.hi.x(), world.bounds.hi.y(), w, h, 30.0};
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    fmt(w) + "\" height=\"" + fmt(h) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  detail::polyline(svg, v,
                   {Vec2(v.x0, v.y0), Vec2(v.x1, v.y0), Vec2(v.x1, v.y1),
                    Vec2(v.x0, v.y1)},
                   "fill:none;stroke:#444;stroke-width:1", true);
  for (const Aabb& b : world.boxes) {
    detail::polyline(svg, v,
                     {Vec2(b.lo.x(), b.lo.y()), Vec2(b.hi.x(), b.lo.y()),
                      Vec2(b.hi.x(), b.hi.y()), Vec2(b.lo.x(), b.hi.y())},
                     "fill:#c99;stroke:#844;stroke-width:1", true);
  }
  for (const Slab& s : world.slabs) {
    Vec3 u, vv;
    s.basis(&u, &vv);
    std::vector<Vec2> poly;
    for (int k = 0; k < 4; ++k) {
      const double su = (k == 0 || k == 3) ? -1.0 : 1.0;
      const double sv = (k < 2) ? -1.0 : 1.0;
      const Vec3 p =
          s.point + su * s.half_extents[0] * u + sv * s.half_extents[1] * vv;
      poly.push_back(p.head<2>());
    }
    detail::polyline(svg, v, poly, "fill:#fc9;stroke:#a73;stroke-width:1",
                     true);
  }
  for (std::size_t i = 0; i < corridor.polys.size(); ++i) {
    const double z = i < slice_z.size() ? slice_z[i] : 0.0;
    detail::polyline(svg, v, cross_section(corridor.polys[i], z),
                     "fill:none;stroke:#38c;stroke-width:1.2", true);
  }
  detail::polyline(svg, v, track, "fill:none;stroke:#c33;stroke-width:2",
                   false);
  svg += "</svg>\n";
  return svg;
}

struct Series {
  std::string label;
  std::string color = "#c33";
  std::vector<double> y;
};

// Shared-abscissa line chart with a simple frame and min/max labels.
inline std::string svg_series(const std::string& title,
                              const std::vector<double>& t,
                              const std::vector<Series>& series) {
  const double w = 720.0, h = 300.0;
  double lo = 0.0, hi = 1.0, tmax = 1.0;
  bool first = true;
  for (const Series& s : series) {
    for (double y : s.y) {
      if (first) {
        lo = hi = y;
        first = false;
      }
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  if (!t.empty()) tmax = std::max(t.back(), 1e-9);
  detail::View v{0.0, lo, tmax, hi, w, h, 34.0};

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    fmt(w) + "\" height=\"" + fmt(h) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  detail::polyline(svg, v,
                   {Vec2(0.0, lo), Vec2(tmax, lo), Vec2(tmax, hi),
                    Vec2(0.0, hi)},
                   "fill:none;stroke:#444;stroke-width:1", true);
  svg += "<text x=\"36\" y=\"20\" font-size=\"13\">" + title + " [" +
         fmt(lo) + ", " + fmt(hi) + "]</text>\n";
  double ly = 40.0;
  for (const Series& s : series) {
    std::vector<Vec2> pts;
    const std::size_t n = std::min(t.size(), s.y.size());
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(Vec2(t[i], s.y[i]));
    detail::polyline(svg, v, pts,
                     ("fill:none;stroke:" + s.color + ";stroke-width:1.5")
                         .c_str(),
                     false);
    svg += "<text x=\"" + fmt(w - 150.0) + "\" y=\"" + fmt(ly) +
           "\" font-size=\"12\" fill=\"" + s.color + "\">" + s.label +
           "</text>\n";
    ly += 16.0;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace plot
}  // namespace ampl

#endif  // AMPL_PLOT_HPP_
