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

#ifndef AMPL_CORRIDOR_HPP_
#define AMPL_CORRIDOR_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ampl/constraints.hpp"
#include "ampl/grid.hpp"
#include "ampl/lp.hpp"

namespace ampl {

struct Polyhedron {
  std::vector<Halfplane> halfplanes;

  // Smallest signed margin over the faces; positive inside.
  double depth(const Vec3& x) const {
    double d = std::numeric_limits<double>::infinity();
    for (const Halfplane& h : halfplanes) {
      d = std::min(d, h.margin(x) / h.n.norm());
    }
    return d;
  }

  bool contains(const Vec3& x, double margin = 0.0) const {
    return depth(x) >= margin;
  }
};

// Ordered polyhedron chain with the constraint-to-junction map phi:
// phi[lambda] = j means constraint lambda is pinned at the junction between
// segments j and j+1 (P row j, time segment_start(j+1)).
struct Corridor {
  std::vector<Polyhedron> polys;
  std::map<int, int> phi;
  // Path indices of the splice points per constraint, for diagnostics.
  std::map<int, std::pair<int, int>> jumps;
};

struct SfcConfig {
  double max_seg_len = 1.5;   // IsFarthestPoint distance threshold
  Vec3 bbox_halfsize = Vec3(2.0, 1.0, 1.0);  // along, lateral, lateral
  int n_avg = 10;
  double r_p = 0.3;
  bool active = true;  // active two-polyhedron generation around constraints
  double margin = 1e-6;
};

namespace detail {

// Deterministic frame with x along dir.
inline Mat3 segment_frame(const Vec3& dir) {
  Vec3 x = dir;
  if (x.norm() < 1e-9) x = Vec3::UnitX();
  x.normalize();
  const Vec3 ref = (std::abs(x.z()) < 0.9) ? Vec3::UnitZ() : Vec3::UnitY();
  const Vec3 y = ref.cross(x).normalized();
  const Vec3 z = x.cross(y);
  Mat3 f;
  f.col(0) = x;
  f.col(1) = y;
  f.col(2) = z;
  return f;
}

}  // namespace detail

// Segment-seeded convex polyhedron: grow an ellipsoid along the segment,
// cut the local occupied voxel centers away with its tangent planes, and
// close with the local bounding-box faces.
inline Polyhedron generate_poly(const Vec3& a, const Vec3& b,
                                const OccupancyGrid& grid,
                                const SfcConfig& cfg = SfcConfig()) {
  if (!line_of_sight(grid, a, b)) {
    throw SeedBlocked("generate_poly: seed segment intersects obstacles");
  }
  const Vec3 mid = 0.5 * (a + b);
  const double half_len = 0.5 * (b - a).norm();
  const Mat3 frame = detail::segment_frame(b - a);
  const double res = grid.resolution();
  Vec3 half = cfg.bbox_halfsize;
  half.x() = std::max(half.x(), half_len + 2.0 * res);

  // corners of the occupied voxels inside the local box, in box coordinates;
  // corners rather than centers so the cut planes clear the full voxel cube
  std::vector<Vec3> pts;
  {
    Vec3 lo = mid, hi = mid;
    for (int cx = -1; cx <= 1; cx += 2) {
      for (int cy = -1; cy <= 1; cy += 2) {
        for (int cz = -1; cz <= 1; cz += 2) {
          const Vec3 corner =
              mid + frame * Vec3(cx * half.x(), cy * half.y(), cz * half.z());
          lo = lo.cwiseMin(corner);
          hi = hi.cwiseMax(corner);
        }
      }
    }
    const Eigen::Vector3i ilo = grid.world_to_index(lo);
    const Eigen::Vector3i ihi = grid.world_to_index(hi);
    for (int iz = ilo.z(); iz <= ihi.z(); ++iz) {
      for (int iy = ilo.y(); iy <= ihi.y(); ++iy) {
        for (int ix = ilo.x(); ix <= ihi.x(); ++ix) {
          if (!grid.in_bounds(ix, iy, iz)) continue;
          if (!grid.occupied(ix, iy, iz)) continue;
          const Vec3 center = grid.index_to_world(ix, iy, iz);
          for (int cx = -1; cx <= 1; cx += 2) {
            for (int cy = -1; cy <= 1; cy += 2) {
              for (int cz = -1; cz <= 1; cz += 2) {
                const Vec3 corner =
                    center + 0.5 * res * Vec3(cx, cy, cz);
                const Vec3 local = frame.transpose() * (corner - mid);
                if ((local.cwiseAbs().array() <= half.array()).all()) {
                  pts.push_back(local);
                }
              }
            }
          }
        }
      }
    }
  }

  // ellipsoid semi-axes in the segment frame: ae along, be lateral
  const double ae = half_len + res;
  double be = half.tail<2>().maxCoeff() * std::sqrt(2.0) + res;
  std::vector<char> cut(pts.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec3& p = pts[i];
    const double frac = p.x() / ae;
    if (std::abs(frac) >= 1.0 - 1e-9) continue;
    const double lat = std::hypot(p.y(), p.z());
    const double cand = lat / std::sqrt(1.0 - frac * frac);
    if (cand < 1e-6) {
      // a voxel corner grazing the segment itself (paths turn exactly at
      // obstacle corners); no lateral room for a tangent cut, so leave the
      // cube to the sealing pass below
      cut[i] = 1;
      continue;
    }
    be = std::min(be, cand);
  }

  Polyhedron poly;
  while (true) {
    // nearest remaining point in the ellipsoid metric
    int best = -1;
    double best_m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (cut[i]) continue;
      const Vec3& p = pts[i];
      const double m = std::sqrt((p.x() / ae) * (p.x() / ae) +
                                 (p.y() / be) * (p.y() / be) +
                                 (p.z() / be) * (p.z() / be));
      if (m < best_m) {
        best_m = m;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    // tangent plane of the scaled ellipsoid through the point
    const Vec3& p = pts[best];
    Vec3 n_local(p.x() / (ae * ae), p.y() / (be * be), p.z() / (be * be));
    n_local.normalize();
    const Vec3 n_world = frame * n_local;
    const double offset = n_world.dot(frame * p + mid);
    poly.halfplanes.push_back({n_world, offset});
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!cut[i] && n_local.dot(pts[i] - p) >= -1e-12) cut[i] = 1;
    }
  }

  for (int k = 0; k < 3; ++k) {
    const Vec3 axis = frame.col(k);
    poly.halfplanes.push_back({axis, axis.dot(mid) + half[k]});
    poly.halfplanes.push_back({-axis, -axis.dot(mid) + half[k]});
  }

  // Point cuts alone cannot seal the volume between excluded corners, so a
  // thin sliver of the polyhedron can thread through a solid wall. Seal it:
  // any occupied cube not already separated by some face gets an axis-aligned
  // cut at its near face, as long as that keeps the seed segment feasible.
  {
    const Eigen::Vector3i ilo = grid.world_to_index(
        mid - frame.cwiseAbs() * half - Vec3::Constant(res));
    const Eigen::Vector3i ihi = grid.world_to_index(
        mid + frame.cwiseAbs() * half + Vec3::Constant(res));
    std::set<std::int64_t> handled;
    const Vec3 seg = b - a;
    const double seg_len2 = seg.squaredNorm();
    bool changed = true;
    for (int pass = 0; changed && pass < 32; ++pass) {
      changed = false;
      for (int iz = ilo.z(); iz <= ihi.z(); ++iz) {
        for (int iy = ilo.y(); iy <= ihi.y(); ++iy) {
          for (int ix = ilo.x(); ix <= ihi.x(); ++ix) {
            if (!grid.in_bounds(ix, iy, iz)) continue;
            if (!grid.occupied(ix, iy, iz)) continue;
            const Vec3 c = grid.index_to_world(ix, iy, iz);
            bool separated = false;
            for (const Halfplane& h : poly.halfplanes) {
              if (h.margin(c) + 0.5 * res * h.n.lpNorm<1>() < 1e-12) {
                separated = true;
                break;
              }
            }
            if (separated) continue;
            const std::int64_t key =
                (static_cast<std::int64_t>(iz) * grid.ny() + iy) *
                    grid.nx() +
                ix;
            if (handled.count(key)) continue;
            // best face cut: cube outside, seed segment kept feasible
            int best_k = -1;
            double best_margin = -1e-9;
            double best_sign = 1.0;
            for (int k = 0; k < 3; ++k) {
              for (double sgn : {1.0, -1.0}) {
                const double bf = sgn * c[k] - 0.5 * res;
                const double m =
                    std::min(bf - sgn * a[k], bf - sgn * b[k]);
                if (m > best_margin) {
                  best_margin = m;
                  best_k = k;
                  best_sign = sgn;
                }
              }
            }
            if (best_k >= 0) {
              Vec3 n = Vec3::Zero();
              n[best_k] = best_sign;
              poly.halfplanes.push_back(
                  {n, best_sign * c[best_k] - 0.5 * res});
              changed = true;
              continue;
            }
            // the seed hugs this cube diagonally; separate at least the
            // voxel center with the plane through the nearest segment point
            double s = seg_len2 > 1e-18 ? seg.dot(c - a) / seg_len2 : 0.0;
            s = std::clamp(s, 0.0, 1.0);
            const Vec3 q = a + s * seg;
            Vec3 dir = c - q;
            handled.insert(key);
            if (dir.norm() < 1e-9) continue;
            dir.normalize();
            poly.halfplanes.push_back({dir, dir.dot(q)});
          }
        }
      }
    }
  }
  return poly;
}

struct ActivePair {
  Polyhedron p1, p2;
  int jump1 = 0, jump2 = 0;
  Vec3 ext1 = Vec3::Zero(), ext2 = Vec3::Zero();
};

// Two-polyhedron generation around a constrained waypoint: extend from the
// waypoint along the projections of the local path means onto the auxiliary
// plane through the waypoint parallel to the task surface.
inline ActivePair active_generate(const Vec3& w,
                                  const std::optional<SurfaceSpec>& surface,
                                  const std::vector<Vec3>& path, int w_index,
                                  const OccupancyGrid& grid,
                                  const SfcConfig& cfg = SfcConfig()) {
  const Vec3 n =
      surface ? surface->normal.normalized() : Vec3(Vec3::UnitZ());

  auto side_mean = [&](int dir) {
    Vec3 sum = Vec3::Zero();
    int count = 0;
    for (int k = 1; k <= cfg.n_avg; ++k) {
      const int idx = w_index + dir * k;
      if (idx < 0 || idx >= static_cast<int>(path.size())) break;
      sum += path[idx];
      ++count;
    }
    if (count == 0) {
      throw DegenerateDirection("active_generate: no path points on one side");
    }
    return Vec3(sum / count);
  };

  auto extend = [&](const Vec3& avg) {
    const Vec3 v = avg - w;
    const Vec3 v_t = v - v.dot(n) * n;
    if (v_t.norm() < 1e-6) {
      throw DegenerateDirection(
          "active_generate: path approaches along the surface normal");
    }
    return Vec3(w + cfg.r_p * v_t.normalized());
  };

  ActivePair out;
  out.ext1 = extend(side_mean(-1));
  out.ext2 = extend(side_mean(+1));
  SfcConfig local = cfg;
  local.bbox_halfsize = Vec3(0.8, 0.6, 0.6);
  out.p1 = generate_poly(w, out.ext1, grid, local);
  out.p2 = generate_poly(w, out.ext2, grid, local);

  out.jump1 = w_index;
  for (int i = 0; i < static_cast<int>(path.size()); ++i) {
    if (out.p1.contains(path[i], cfg.margin)) {
      out.jump1 = i;
      break;
    }
  }
  out.jump2 = w_index;
  for (int i = static_cast<int>(path.size()) - 1; i >= 0; --i) {
    if (out.p2.contains(path[i], cfg.margin)) {
      out.jump2 = i;
      break;
    }
  }
  return out;
}

namespace detail {

inline int path_index_of(const std::vector<Vec3>& path, const Vec3& w) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < static_cast<int>(path.size()); ++i) {
    const double d = (path[i] - w).norm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace detail

// Corridor assembly along the path: standard polyhedra between farthest
// points, with the pre-generated constrained pairs spliced in at their jump
// points.
inline Corridor build_sfc(const std::vector<Vec3>& path,
                          const std::vector<WaypointConstraint>& constraints,
                          const OccupancyGrid& grid, const AmParams& params,
                          const SfcConfig& cfg = SfcConfig()) {
  Corridor out;
  if (path.empty()) return out;
  const int last = static_cast<int>(path.size()) - 1;

  struct Queued {
    int lambda;
    int w_index;
    ActivePair pair;
  };
  std::deque<Queued> queue;
  if (cfg.active) {
    for (int lam = 0; lam < static_cast<int>(constraints.size()); ++lam) {
      const WaypointConstraint& c = constraints[lam];
      const Vec3 w = c.path_point(params);
      const int wi = detail::path_index_of(path, w);
      queue.push_back({lam, wi, active_generate(w, c.surface, path, wi, grid,
                                                cfg)});
    }
    std::sort(queue.begin(), queue.end(),
              [](const Queued& a, const Queued& b) {
                return a.w_index < b.w_index;
              });
  }

  int anchor = 0;
  auto near = [&](int i, int j) {
    return (path[i] - path[j]).norm() <= cfg.max_seg_len &&
           line_of_sight(grid, path[i], path[j]);
  };

  if (last == 0 && queue.empty()) {
    out.polys.push_back(generate_poly(path[0], path[0], grid, cfg));
    return out;
  }

  while (true) {
    if (!queue.empty() && queue.front().pair.jump1 <= anchor) {
      const Queued q = queue.front();
      queue.pop_front();
      out.phi[q.lambda] = static_cast<int>(out.polys.size());
      out.jumps[q.lambda] = {q.pair.jump1, q.pair.jump2};
      out.polys.push_back(q.pair.p1);
      out.polys.push_back(q.pair.p2);
      anchor = std::max(anchor, q.pair.jump2);
      if (queue.empty() && anchor >= last) break;
      continue;
    }
    const int target = queue.empty() ? last : queue.front().pair.jump1;
    if (anchor >= target && queue.empty()) break;
    int i = std::min(anchor + 1, target);
    while (i < target && near(anchor, i + 1)) ++i;
    Polyhedron poly = generate_poly(path[anchor], path[i], grid, cfg);
    // advance only over the covered prefix so every path point lands in
    // some polyhedron
    int resume = anchor;
    while (resume < target && poly.contains(path[resume + 1])) ++resume;
    if (resume == anchor) {
      // the polyline bulges out of the straight-seeded polyhedron right
      // away; fall back to the single-step segment
      poly = generate_poly(path[anchor], path[anchor + 1], grid, cfg);
      resume = anchor + 1;
      while (resume < target && poly.contains(path[resume + 1])) ++resume;
    }
    out.polys.push_back(poly);
    anchor = resume;
    if (queue.empty() && anchor >= last) break;
  }

  // validate the chain
  for (std::size_t i = 0; i + 1 < out.polys.size(); ++i) {
    if (!intersection_nonempty(out.polys[i].halfplanes,
                               out.polys[i + 1].halfplanes, cfg.margin)) {
      throw CorridorGap("build_sfc: polyhedra " + std::to_string(i) +
                        " and " + std::to_string(i + 1) +
                        " do not intersect");
    }
  }
  for (const auto& [lam, j] : out.phi) {
    const Vec3 w = constraints[lam].path_point(params);
    if (!out.polys[j].contains(w, cfg.margin) ||
        !out.polys[j + 1].contains(w, cfg.margin)) {
      throw CorridorGap("build_sfc: constrained waypoint escaped its pair");
    }
  }
  return out;
}

// Fraction of the free voxel centers within `radius` of `center` that the
// corridor covers.
inline double utilization(const Corridor& corridor, const OccupancyGrid& grid,
                          const Vec3& center, double radius) {
  int covered = 0, total = 0;
  const Eigen::Vector3i lo = grid.world_to_index(center - Vec3::Constant(radius));
  const Eigen::Vector3i hi = grid.world_to_index(center + Vec3::Constant(radius));
  for (int iz = lo.z(); iz <= hi.z(); ++iz) {
    for (int iy = lo.y(); iy <= hi.y(); ++iy) {
      for (int ix = lo.x(); ix <= hi.x(); ++ix) {
        if (!grid.in_bounds(ix, iy, iz)) continue;
        if (grid.occupied(ix, iy, iz)) continue;
        const Vec3 c = grid.index_to_world(ix, iy, iz);
        if ((c - center).norm() > radius) continue;
        ++total;
        for (const Polyhedron& p : corridor.polys) {
          if (p.contains(c)) {
            ++covered;
            break;
          }
        }
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(covered) / total;
}

}  // namespace ampl

#endif  // AMPL_CORRIDOR_HPP_
