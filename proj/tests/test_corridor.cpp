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

#include <doctest.h>

#include <cmath>
#include <random>

#include "ampl/corridor.hpp"

using namespace ampl;

namespace {

WorldGeom empty_world() {
  WorldGeom w;
  w.bounds.lo = Vec3(0, 0, 0);
  w.bounds.hi = Vec3(4.0, 4.0, 4.0);
  w.resolution = 0.1;
  return w;
}

}  // namespace

TEST_CASE("generate_poly in free space is the local box") {
  const OccupancyGrid g = rasterize(empty_world());
  const Vec3 a(1.0, 2.0, 2.0), b(2.0, 2.0, 2.0);
  const Polyhedron p = generate_poly(a, b, g);
  CHECK(p.halfplanes.size() == 6);
  CHECK(p.contains(a, 1e-6));
  CHECK(p.contains(b, 1e-6));
  CHECK(p.contains(0.5 * (a + b), 1e-6));
  // box extents: +-max(2.0, half+0.2) along x, +-1 lateral
  CHECK(p.contains(Vec3(1.5, 2.9, 2.0), 1e-6));
  CHECK(!p.contains(Vec3(1.5, 3.1, 2.0)));
}

TEST_CASE("generate_poly cuts a single obstacle voxel") {
  WorldGeom w = empty_world();
  Aabb box;
  box.lo = Vec3(1.4, 2.2, 1.9);
  box.hi = Vec3(1.5, 2.3, 2.0);
  w.boxes.push_back(box);
  const OccupancyGrid g = rasterize(w);
  REQUIRE(g.occupied_count() == 1);
  const Vec3 a(1.0, 2.0, 2.0), b(2.0, 2.0, 2.0);
  const Polyhedron p = generate_poly(a, b, g);
  CHECK(p.halfplanes.size() >= 7);
  const Vec3 center = g.index_to_world(14, 22, 19);
  // the whole voxel cube is cleared, not just its center
  CHECK(p.depth(center) <= -0.01);
  for (int cx = -1; cx <= 1; cx += 2) {
    for (int cy = -1; cy <= 1; cy += 2) {
      for (int cz = -1; cz <= 1; cz += 2) {
        CHECK(p.depth(center + 0.05 * Vec3(cx, cy, cz)) <= 1e-9);
      }
    }
  }
  CHECK(p.contains(a, 1e-6));
  CHECK(p.contains(b, 1e-6));
}

TEST_CASE("generate_poly excludes all local occupied centers under clutter") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  std::uniform_real_distribution<double> us(0.1, 0.4);
  int done = 0;
  for (int trial = 0; trial < 15; ++trial) {
    WorldGeom w = empty_world();
    for (int k = 0; k < 10; ++k) {
      Aabb box;
      box.lo = Vec3(u(rng), u(rng), u(rng));
      box.hi = box.lo + Vec3(us(rng), us(rng), us(rng));
      w.boxes.push_back(box);
    }
    const OccupancyGrid g = rasterize(w);
    const Vec3 a(0.25, 0.25, 0.25), b(1.25, 1.05, 0.85);
    Polyhedron p;
    try {
      p = generate_poly(a, b, g);
    } catch (const SeedBlocked&) {
      continue;
    }
    for (int iz = 0; iz < g.nz(); ++iz) {
      for (int iy = 0; iy < g.ny(); ++iy) {
        for (int ix = 0; ix < g.nx(); ++ix) {
          if (g.occupied(ix, iy, iz)) {
            CHECK(p.depth(g.index_to_world(ix, iy, iz)) <= 1e-9);
          }
        }
      }
    }
    for (double s = 0.0; s <= 1.0; s += 0.05) {
      CHECK(p.contains(a + s * (b - a), 1e-9));
    }
    ++done;
  }
  CHECK(done >= 10);
}

TEST_CASE("generate_poly SeedBlocked") {
  WorldGeom w = empty_world();
  Aabb box;
  box.lo = Vec3(1.4, 1.9, 1.9);
  box.hi = Vec3(1.6, 2.1, 2.1);
  w.boxes.push_back(box);
  const OccupancyGrid g = rasterize(w);
  CHECK_THROWS_AS(generate_poly(Vec3(1.0, 2.0, 2.0), Vec3(2.0, 2.0, 2.0), g),
                  SeedBlocked);
}

TEST_CASE("active_generate straight horizontal case") {
  const OccupancyGrid g = rasterize(empty_world());
  std::vector<Vec3> path;
  for (int i = 0; i <= 40; ++i) path.push_back(Vec3(0.5 + 0.075 * i, 2.0, 2.0));
  const int wi = 20;
  const Vec3 w = path[wi];
  SurfaceSpec s;
  s.point = Vec3(w.x(), 2.0, 1.5);
  s.normal = Vec3::UnitZ();
  const ActivePair ap = active_generate(w, s, path, wi, g);
  // extensions along the path, symmetric about w
  CHECK((ap.ext1 - (w - Vec3(0.3, 0, 0))).norm() < 1e-9);
  CHECK((ap.ext2 - (w + Vec3(0.3, 0, 0))).norm() < 1e-9);
  CHECK(ap.p1.contains(w, 1e-6));
  CHECK(ap.p2.contains(w, 1e-6));
  CHECK(intersection_nonempty(ap.p1.halfplanes, ap.p2.halfplanes, 1e-6));
  CHECK(ap.jump1 < wi);
  CHECK(ap.jump2 > wi);
}

TEST_CASE("active_generate projects onto a 45 degree inclined plane") {
  const OccupancyGrid g = rasterize(empty_world());
  SurfaceSpec s;
  s.point = Vec3(2.0, 2.0, 2.0);
  s.normal = Vec3(1, 0, 1).normalized();
  // path arriving from behind, descending onto the surface
  std::vector<Vec3> path;
  for (int i = 0; i <= 40; ++i) {
    path.push_back(Vec3(0.5 + 0.05 * i, 2.0, 3.0 - 0.02 * i));
  }
  const int wi = 25;
  const Vec3 w = path[wi];
  const ActivePair ap = active_generate(w, s, path, wi, g);
  CHECK(std::abs((ap.ext1 - w).dot(s.normal)) < 1e-9);
  CHECK(std::abs((ap.ext2 - w).dot(s.normal)) < 1e-9);
  CHECK((ap.ext1 - w).norm() == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("active_generate default horizontal plane and degenerate path") {
  const OccupancyGrid g = rasterize(empty_world());
  std::vector<Vec3> path;
  for (int i = 0; i <= 20; ++i) path.push_back(Vec3(1.0 + 0.1 * i, 2.0, 2.0));
  const ActivePair ap =
      active_generate(path[10], std::nullopt, path, 10, g);
  CHECK(std::abs((ap.ext1 - path[10]).z()) < 1e-12);
  CHECK(std::abs((ap.ext2 - path[10]).z()) < 1e-12);

  // vertical path onto a horizontal surface: projection vanishes
  std::vector<Vec3> vpath;
  for (int i = 0; i <= 20; ++i) vpath.push_back(Vec3(2.0, 2.0, 3.0 - 0.05 * i));
  CHECK_THROWS_AS(active_generate(vpath[10], std::nullopt, vpath, 10, g),
                  DegenerateDirection);
}

TEST_CASE("build_sfc covers an unconstrained path") {
  const OccupancyGrid g = rasterize(empty_world());
  const auto path = search_path(g, {Vec3(0.35, 0.35, 0.35),
                                    Vec3(3.65, 3.35, 2.85)});
  AmParams params;
  const Corridor c = build_sfc(path, {}, g, params);
  CHECK(c.polys.size() >= 1);
  for (const Vec3& p : path) {
    bool inside = false;
    for (const Polyhedron& poly : c.polys) {
      if (poly.contains(p, 0.0)) {
        inside = true;
        break;
      }
    }
    CHECK(inside);
  }
  for (std::size_t i = 0; i + 1 < c.polys.size(); ++i) {
    CHECK(intersection_nonempty(c.polys[i].halfplanes,
                                c.polys[i + 1].halfplanes, 1e-6));
  }
}

TEST_CASE("build_sfc splices the constrained pair") {
  const OccupancyGrid g = rasterize(empty_world());
  AmParams params;
  WaypointConstraint wc;
  wc.kind = WaypointConstraint::Kind::kQuadrotor;
  wc.position = Vec3(2.05, 2.05, 2.05);
  SurfaceSpec s;
  s.point = Vec3(2.05, 2.05, 1.8);
  s.normal = Vec3::UnitZ();
  wc.surface = s;
  const auto path = search_path(
      g, {Vec3(0.35, 0.35, 0.35), wc.position, Vec3(3.65, 3.65, 3.65)});
  const Corridor c = build_sfc(path, {wc}, g, params);
  REQUIRE(c.phi.count(0) == 1);
  const int j = c.phi.at(0);
  REQUIRE(j + 1 < static_cast<int>(c.polys.size()));
  CHECK(c.polys[j].contains(wc.position, 1e-6));
  CHECK(c.polys[j + 1].contains(wc.position, 1e-6));
  std::vector<Halfplane> both = c.polys[j].halfplanes;
  both.insert(both.end(), c.polys[j + 1].halfplanes.begin(),
              c.polys[j + 1].halfplanes.end());
  const ChebyshevResult r = chebyshev_center(both);
  CHECK(r.feasible);
  CHECK((r.center - wc.position).norm() < 1.0);
}

TEST_CASE("build_sfc invariants on random maps") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  std::uniform_real_distribution<double> us(0.1, 0.5);
  int done = 0;
  for (int trial = 0; trial < 30; ++trial) {
    WorldGeom w = empty_world();
    for (int k = 0; k < 10; ++k) {
      Aabb box;
      box.lo = Vec3(u(rng), u(rng), u(rng));
      box.hi = box.lo + Vec3(us(rng), us(rng), us(rng));
      w.boxes.push_back(box);
    }
    const OccupancyGrid g = rasterize(w);
    const Vec3 a(0.15, 0.15, 0.15), b(3.85, 3.85, 3.85);
    if (g.occupied_point(a) || g.occupied_point(b)) continue;
    AmParams params;
    Corridor c;
    std::vector<Vec3> path;
    try {
      path = search_path(g, {a, b});
      c = build_sfc(path, {}, g, params);
    } catch (const PlannerError&) {
      continue;
    }
    for (std::size_t i = 0; i + 1 < c.polys.size(); ++i) {
      CHECK(intersection_nonempty(c.polys[i].halfplanes,
                                  c.polys[i + 1].halfplanes, 1e-6));
    }
    // every path point sits in some polyhedron, up to boundary grazing
    for (const Vec3& p : path) {
      bool inside = false;
      for (const Polyhedron& poly : c.polys) {
        if (poly.contains(p, -1e-9)) {
          inside = true;
          break;
        }
      }
      CHECK(inside);
    }
    // no occupied voxel center strictly inside any polyhedron
    for (int iz = 0; iz < g.nz(); ++iz) {
      for (int iy = 0; iy < g.ny(); ++iy) {
        for (int ix = 0; ix < g.nx(); ++ix) {
          if (!g.occupied(ix, iy, iz)) continue;
          const Vec3 cc = g.index_to_world(ix, iy, iz);
          for (const Polyhedron& poly : c.polys) {
            CHECK(poly.depth(cc) <= 1e-9);
          }
        }
      }
    }
    ++done;
  }
  CHECK(done >= 15);
}

TEST_CASE("utilization counts corridor coverage") {
  const OccupancyGrid g = rasterize(empty_world());
  const auto path =
      search_path(g, {Vec3(0.35, 2.05, 2.05), Vec3(3.65, 2.05, 2.05)});
  AmParams params;
  const Corridor c = build_sfc(path, {}, g, params);
  const double u = utilization(c, g, Vec3(2.05, 2.05, 2.05), 0.5);
  CHECK(u > 0.9);
  Corridor none;
  CHECK(utilization(none, g, Vec3(2.05, 2.05, 2.05), 0.5) == 0.0);
}
