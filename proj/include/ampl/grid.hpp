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

#ifndef AMPL_GRID_HPP_
#define AMPL_GRID_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <tuple>
#include <vector>

#include "ampl/common.hpp"

namespace ampl {

struct Aabb {
  Vec3 lo = Vec3::Zero();
  Vec3 hi = Vec3::Zero();

  bool contains(const Vec3& p, double eps = 0.0) const {
    return (p.array() >= lo.array() - eps).all() &&
           (p.array() <= hi.array() + eps).all();
  }
};

// Finite slab of an inclined plane: a point on the mid-plane, the unit
// normal, in-plane half extents, and the total thickness across the normal.
struct Slab {
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  Eigen::Vector2d half_extents = Eigen::Vector2d(1.0, 1.0);
  double thickness = 0.1;
  // Optional in-plane direction of the first extent axis; zero picks the
  // deterministic default basis.
  Vec3 u_hint = Vec3::Zero();

  // Deterministic in-plane basis.
  void basis(Vec3* u, Vec3* v) const {
    const Vec3 n = normal.normalized();
    if (u_hint.norm() > 1e-9) {
      *u = (u_hint - u_hint.dot(n) * n).normalized();
      *v = n.cross(*u);
      return;
    }
    const Vec3 ref =
        (std::abs(n.z()) < 0.9) ? Vec3::UnitZ() : Vec3::UnitX();
    *u = ref.cross(n).normalized();
    *v = n.cross(*u);
  }

  bool contains(const Vec3& p, double eps = 0.0) const {
    const Vec3 n = normal.normalized();
    const Vec3 d = p - point;
    if (std::abs(d.dot(n)) > 0.5 * thickness + eps) return false;
    Vec3 u, v;
    basis(&u, &v);
    return std::abs(d.dot(u)) <= half_extents[0] + eps &&
           std::abs(d.dot(v)) <= half_extents[1] + eps;
  }
};

struct WorldGeom {
  Aabb bounds;
  double resolution = 0.1;
  std::vector<Aabb> boxes;
  std::vector<Slab> slabs;

  bool occupied_point(const Vec3& p, double eps = 0.0) const {
    for (const Aabb& b : boxes) {
      if (b.contains(p, eps)) return true;
    }
    for (const Slab& s : slabs) {
      if (s.contains(p, eps)) return true;
    }
    return false;
  }
};

class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(const Vec3& origin, double resolution, int nx, int ny, int nz)
      : origin_(origin),
        res_(resolution),
        nx_(nx),
        ny_(ny),
        nz_(nz),
        cells_(static_cast<std::size_t>(nx) * ny * nz, 0) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  double resolution() const { return res_; }
  const Vec3& origin() const { return origin_; }

  bool in_bounds(int ix, int iy, int iz) const {
    return ix >= 0 && iy >= 0 && iz >= 0 && ix < nx_ && iy < ny_ && iz < nz_;
  }

  std::size_t linear(int ix, int iy, int iz) const {
    return (static_cast<std::size_t>(iz) * ny_ + iy) * nx_ + ix;
  }

  Eigen::Vector3i world_to_index(const Vec3& p) const {
    const Vec3 f = (p - origin_) / res_;
    return Eigen::Vector3i(static_cast<int>(std::floor(f.x())),
                           static_cast<int>(std::floor(f.y())),
                           static_cast<int>(std::floor(f.z())));
  }

  Vec3 index_to_world(int ix, int iy, int iz) const {
    return origin_ + res_ * Vec3(ix + 0.5, iy + 0.5, iz + 0.5);
  }

  bool occupied(int ix, int iy, int iz) const {
    if (!in_bounds(ix, iy, iz)) return true;
    return cells_[linear(ix, iy, iz)] != 0;
  }

  bool occupied_point(const Vec3& p) const {
    const Eigen::Vector3i i = world_to_index(p);
    return occupied(i.x(), i.y(), i.z());
  }

  void set(int ix, int iy, int iz, bool occ) {
    cells_[linear(ix, iy, iz)] = occ ? 1 : 0;
  }

  std::size_t occupied_count() const {
    std::size_t c = 0;
    for (std::uint8_t v : cells_) c += v;
    return c;
  }

 private:
  Vec3 origin_ = Vec3::Zero();
  double res_ = 0.1;
  int nx_ = 0, ny_ = 0, nz_ = 0;
  std::vector<std::uint8_t> cells_;
};

// A voxel is occupied iff its center lies inside an obstacle; inflation is
// handled downstream by the corridor, not here. The epsilon breaks the tie
// when an obstacle face passes exactly through a voxel center, which would
// otherwise leave the carved corridor tangent to the true surface.
inline OccupancyGrid rasterize(const WorldGeom& world) {
  constexpr double kEps = 1e-6;
  const double res = world.resolution;
  const Vec3 span = world.bounds.hi - world.bounds.lo;
  const int nx = std::max(1, static_cast<int>(std::ceil(span.x() / res - 1e-9)));
  const int ny = std::max(1, static_cast<int>(std::ceil(span.y() / res - 1e-9)));
  const int nz = std::max(1, static_cast<int>(std::ceil(span.z() / res - 1e-9)));
  OccupancyGrid grid(world.bounds.lo, res, nx, ny, nz);
  for (int iz = 0; iz < nz; ++iz) {
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        if (world.occupied_point(grid.index_to_world(ix, iy, iz), kEps)) {
          grid.set(ix, iy, iz, true);
        }
      }
    }
  }
  return grid;
}

namespace detail {

// 26-connected A* between voxel indices. Returns voxel indices including both
// endpoints, optimal in the Euclidean step metric.
inline std::vector<Eigen::Vector3i> astar(const OccupancyGrid& grid,
                                          const Eigen::Vector3i& start,
                                          const Eigen::Vector3i& goal) {
  if (grid.occupied(start.x(), start.y(), start.z()) ||
      grid.occupied(goal.x(), goal.y(), goal.z())) {
    throw NoPath("endpoint voxel occupied");
  }
  if (start == goal) return {start};

  auto heuristic = [&](const Eigen::Vector3i& a) {
    double d[3] = {static_cast<double>(std::abs(a.x() - goal.x())),
                   static_cast<double>(std::abs(a.y() - goal.y())),
                   static_cast<double>(std::abs(a.z() - goal.z()))};
    std::sort(d, d + 3);  // d[0] <= d[1] <= d[2]
    const double kSqrt2 = std::sqrt(2.0), kSqrt3 = std::sqrt(3.0);
    return kSqrt3 * d[0] + kSqrt2 * (d[1] - d[0]) + (d[2] - d[1]);
  };

  const std::size_t total =
      static_cast<std::size_t>(grid.nx()) * grid.ny() * grid.nz();
  std::vector<double> g(total, std::numeric_limits<double>::infinity());
  std::vector<std::int64_t> parent(total, -1);
  std::vector<std::uint8_t> closed(total, 0);

  using Node = std::tuple<double, double, std::size_t>;  // f, h, index
  std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;

  auto lin = [&](const Eigen::Vector3i& a) {
    return grid.linear(a.x(), a.y(), a.z());
  };
  auto unlin = [&](std::size_t i) {
    const int ix = static_cast<int>(i % grid.nx());
    const int iy = static_cast<int>((i / grid.nx()) % grid.ny());
    const int iz = static_cast<int>(i / (static_cast<std::size_t>(grid.nx()) *
                                         grid.ny()));
    return Eigen::Vector3i(ix, iy, iz);
  };

  const std::size_t s = lin(start);
  const std::size_t t = lin(goal);
  g[s] = 0.0;
  open.emplace(heuristic(start), heuristic(start), s);

  while (!open.empty()) {
    const auto [f, h, idx] = open.top();
    open.pop();
    if (closed[idx]) continue;
    closed[idx] = 1;
    if (idx == t) break;
    const Eigen::Vector3i cur = unlin(idx);
    for (int dz = -1; dz <= 1; ++dz) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0 && dz == 0) continue;
          const Eigen::Vector3i nb = cur + Eigen::Vector3i(dx, dy, dz);
          if (!grid.in_bounds(nb.x(), nb.y(), nb.z())) continue;
          if (grid.occupied(nb.x(), nb.y(), nb.z())) continue;
          const std::size_t nidx = lin(nb);
          if (closed[nidx]) continue;
          const double step =
              std::sqrt(static_cast<double>(dx * dx + dy * dy + dz * dz));
          const double cand = g[idx] + step;
          if (cand < g[nidx] - 1e-12) {
            g[nidx] = cand;
            parent[nidx] = static_cast<std::int64_t>(idx);
            const double hn = heuristic(nb);
            open.emplace(cand + hn, hn, nidx);
          }
        }
      }
    }
  }

  if (!closed[t]) throw NoPath("no grid path between leg endpoints");

  std::vector<Eigen::Vector3i> out;
  for (std::int64_t i = static_cast<std::int64_t>(t); i >= 0; i = parent[i]) {
    out.push_back(unlin(static_cast<std::size_t>(i)));
    if (static_cast<std::size_t>(i) == s) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Straight-line visibility through free voxels, sampled at half resolution.
inline bool line_of_sight(const OccupancyGrid& grid, const Vec3& a,
                          const Vec3& b) {
  const double len = (b - a).norm();
  const int n = std::max(2, static_cast<int>(std::ceil(
                                len / (0.5 * grid.resolution()))));
  for (int i = 0; i <= n; ++i) {
    const Vec3 p = a + (b - a) * (static_cast<double>(i) / n);
    if (grid.occupied_point(p)) return false;
  }
  return true;
}

// Multi-stage grid search: concatenated per-leg shortest paths. The exact
// ordered points bracket each leg; interior points are voxel centers.
inline std::vector<Vec3> search_path(const OccupancyGrid& grid,
                                     const std::vector<Vec3>& ordered_points) {
  if (ordered_points.empty()) return {};
  std::vector<Vec3> out;
  out.push_back(ordered_points.front());
  for (std::size_t leg = 0; leg + 1 < ordered_points.size(); ++leg) {
    const Vec3& a = ordered_points[leg];
    const Vec3& b = ordered_points[leg + 1];
    const auto voxels =
        detail::astar(grid, grid.world_to_index(a), grid.world_to_index(b));
    for (const Eigen::Vector3i& v : voxels) {
      const Vec3 c = grid.index_to_world(v.x(), v.y(), v.z());
      if ((c - out.back()).norm() > 1e-9 && (c - b).norm() > 1e-9) {
        out.push_back(c);
      }
    }
    if ((b - out.back()).norm() > 1e-9) out.push_back(b);
  }
  return out;
}

}  // namespace ampl

#endif  // AMPL_GRID_HPP_
