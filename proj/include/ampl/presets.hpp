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

#ifndef AMPL_PRESETS_HPP_
#define AMPL_PRESETS_HPP_

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "ampl/solver.hpp"

namespace ampl {

// ---------------------------------------------------------------------------
// Trajectory-level success checks shared by the benchmark suites.

// True collision volume at time t: the varying ellipsoid of the actual arm
// extension, regardless of which collision model the planner used.
inline bool trajectory_collision_free(const Trajectory6& traj,
                                      const WorldGeom& world,
                                      const AmParams& p, const Vec3& f_ext,
                                      double dt = 0.02, int n_dirs = 256) {
  // deterministic Fibonacci sphere directions
  std::vector<Vec3> dirs;
  dirs.reserve(n_dirs);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n_dirs; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n_dirs;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * i;
    dirs.emplace_back(r * std::cos(a), r * std::sin(a), z);
  }
  const double total = traj.total_time();
  for (double t = 0.0; t <= total + 1e-9; t += dt) {
    const double tc = std::min(t, total);
    const Vec6 v0 = traj.eval(tc, 0);
    const Vec6 v2 = traj.eval(tc, 2);
    const AttitudeState att =
        flat_to_attitude(v2.head<3>(), Vec3::Zero(), f_ext, p);
    const double h = ellipsoid_height(v0.tail<3>(), p);
    const Vec3 g_diag(p.r_e, p.r_e, h);
    const Vec3 p_b = v0.head<3>();
    if (world.occupied_point(p_b)) return false;
    for (const Vec3& u : dirs) {
      if (world.occupied_point(p_b + att.R_B * g_diag.cwiseProduct(u))) {
        return false;
      }
    }
  }
  return true;
}

// Minimum world-frame end-effector distance to a target over the trajectory.
inline double min_ee_distance(const Trajectory6& traj, const Vec3& target,
                              const AmParams& p, const Vec3& f_ext,
                              double dt = 0.005) {
  double best = std::numeric_limits<double>::infinity();
  const double total = traj.total_time();
  for (double t = 0.0; t <= total + 1e-9; t += dt) {
    const double tc = std::min(t, total);
    best = std::min(best,
                    (ee_world_position(traj, tc, p, f_ext) - target).norm());
  }
  return best;
}

// ---------------------------------------------------------------------------
// Inclined-surface strike/grasp scene.

enum class Skill { kStrike, kGrasp };

struct InclineTask {
  Scenario scenario;      // constraints[0] is the task waypoint
  Skill skill = Skill::kStrike;
  double theta = 0.0;     // inclination [rad]
  Vec3 center = Vec3::Zero();   // surface center
  Vec3 normal = Vec3::UnitZ();  // outward surface normal
  Vec3 target = Vec3::Zero();   // end-effector target, 0.05 m off the surface
  Vec3 w_task = Vec3::Zero();   // quadrotor waypoint at the task instant
};

// Inclined plane tilted about the x axis; its normal leans toward -y, so
// "in front" is the -y side and "behind" is +y. The start position is given
// in the surface-centered horizontal frame.
inline InclineTask make_incline_task(Skill skill, double theta,
                                     const Vec2& start_rel_xy) {
  InclineTask task;
  task.skill = skill;
  task.theta = theta;
  task.center = Vec3(0.0, 0.0, 1.2);
  task.normal = Vec3(0.0, -std::sin(theta), std::cos(theta));
  task.target = task.center + 0.05 * task.normal;

  Scenario& sc = task.scenario;
  sc.name = skill == Skill::kStrike ? "incline-strike" : "incline-grasp";
  sc.world.bounds = {Vec3(-4.6, -4.6, 0.0), Vec3(4.6, 4.6, 2.6)};
  sc.world.resolution = 0.1;
  Slab surface;
  surface.point = task.center;
  surface.normal = task.normal;
  surface.half_extents = Eigen::Vector2d(0.45, 0.45);
  surface.thickness = 0.08;
  surface.u_hint = Vec3::UnitX();
  sc.world.slabs.push_back(surface);

  sc.start.pos.head<3>() =
      task.center + Vec3(start_rel_xy.x(), start_rel_xy.y(), 0.0);
  sc.start.pos.tail<3>() = Vec3(0, 0, -0.15);
  sc.goal.pos.head<3>() = task.center + Vec3(0.0, -2.0, 0.0);
  sc.goal.pos.tail<3>() = Vec3(0, 0, -0.15);
  sc.solve.relative = true;

  WaypointConstraint c;
  c.kind = WaypointConstraint::Kind::kEndEffector;
  c.position = task.target;
  c.surface = SurfaceSpec{task.center, task.normal, Eigen::Vector2d(0.45, 0.45)};
  c.orientation = OrientationSpec{task.normal};
  if (skill == Skill::kGrasp) {
    c.velocity = VelocitySpec{Vec3::Ones(), Vec3::Zero()};
  } else {
    c.velocity = VelocitySpec{Vec3::Ones(), Vec3(-0.3 * task.normal)};
  }
  sc.constraints.push_back(c);
  task.w_task = c.path_point(sc.params);
  return task;
}

struct TaskCheck {
  bool success = false;
  double ee_dist = std::numeric_limits<double>::infinity();
  double align_deg = 180.0;
};

// Success per the ablation protocol: end effector within 0.03 m of the target
// at the task instant and thrust axis parallel to the surface normal within
// 5 degrees.
inline TaskCheck evaluate_incline_task(const PlanResult& res,
                                       const InclineTask& task,
                                       int task_index = 0) {
  TaskCheck out;
  if (res.ctx.corridor.phi.count(task_index) == 0) return out;
  const Trajectory6 traj = res.trajectory();
  const int j = res.ctx.corridor.phi.at(task_index);
  const double t = traj.segment_start(j + 1);
  const AmParams& p = res.ctx.params;
  out.ee_dist =
      (ee_world_position(traj, t, p, res.ctx.weights.f_ext) - task.target)
          .norm();
  const Vec6 v2 = traj.eval(t, 2);
  const AttitudeState att =
      flat_to_attitude(v2.head<3>(), Vec3::Zero(), res.ctx.weights.f_ext, p);
  const double c = std::clamp(
      att.R_B.col(2).dot(task.normal.normalized()), -1.0, 1.0);
  out.align_deg = rad2deg(std::acos(c));
  out.success = out.ee_dist <= 0.03 && out.align_deg <= 5.0;
  return out;
}

// ---------------------------------------------------------------------------
// Narrow gate: two boxes forming a horizontal slot of the given height.

inline Scenario narrow_gate_scenario(double gap, double pe_z0 = -0.2,
                                     bool varying = true) {
  Scenario sc;
  sc.name = "narrow-gate";
  sc.world.bounds = {Vec3(-0.5, -1.2, 0.0), Vec3(4.5, 1.2, 2.4)};
  sc.world.resolution = 0.05;
  const double zc = 1.2;
  sc.world.boxes.push_back(
      {Vec3(1.9, -1.2, 0.0), Vec3(2.1, 1.2, zc - 0.5 * gap)});
  sc.world.boxes.push_back(
      {Vec3(1.9, -1.2, zc + 0.5 * gap), Vec3(2.1, 1.2, 2.4)});
  sc.start.pos.head<3>() = Vec3(0, 0, zc);
  sc.start.pos.tail<3>() = Vec3(0, 0, pe_z0);
  sc.goal.pos.head<3>() = Vec3(4, 0, zc);
  sc.goal.pos.tail<3>() = Vec3(0, 0, pe_z0);
  sc.solve.relative = true;
  sc.collision.varying = varying;
  sc.collision.fixed_h = sc.params.p_B_in_D.z() - pe_z0;
  return sc;
}

// ---------------------------------------------------------------------------
// Tilted hole: a wall at x = 2 whose slot is inclined by theta from the
// horizontal, built from four finite plates.

inline Scenario tilted_hole_scenario(double theta, double pe_z0,
                                     bool varying = true) {
  Scenario sc;
  sc.name = "tilted-hole";
  sc.world.bounds = {Vec3(-0.5, -1.5, 0.0), Vec3(4.5, 1.5, 2.4)};
  sc.world.resolution = 0.05;
  const Vec3 c(2.0, 0.0, 1.2);
  const Vec3 d(0.0, std::cos(theta), std::sin(theta));   // slot long axis
  const Vec3 m(0.0, -std::sin(theta), std::cos(theta));  // slot narrow axis
  const double hw = 0.14;  // slot half width
  const double hl = 0.50;  // slot half length

  auto plate = [&](const Vec3& point, double eu, double ev) {
    Slab s;
    s.point = point;
    s.normal = Vec3::UnitX();
    s.half_extents = Eigen::Vector2d(eu, ev);
    s.thickness = 0.1;
    s.u_hint = d;
    sc.world.slabs.push_back(s);
  };
  plate(c + (hw + 2.0) * m, 4.0, 2.0);
  plate(c - (hw + 2.0) * m, 4.0, 2.0);
  plate(c + (hl + 2.0) * d, 2.0, hw + 0.001);
  plate(c - (hl + 2.0) * d, 2.0, hw + 0.001);

  // the hole leaves only millimetres of slack at shallow tilt, so the soft
  // penalty needs a wider activation band to keep residual violations out
  sc.params.d_s = 0.02;

  sc.start.pos.head<3>() = Vec3(0, 0, 1.2);
  sc.start.pos.tail<3>() = Vec3(0, 0, pe_z0);
  sc.goal.pos.head<3>() = Vec3(4, 0, 1.2);
  sc.goal.pos.tail<3>() = Vec3(0, 0, pe_z0);
  sc.solve.relative = true;
  sc.collision.varying = varying;
  sc.collision.fixed_h = sc.params.p_B_in_D.z() - pe_z0;
  return sc;
}

// ---------------------------------------------------------------------------
// Random cubes: 12 cubes scattered between start and goal.

inline Scenario random_cubes_scenario(std::uint64_t seed) {
  Scenario sc;
  sc.name = "random-cubes";
  sc.seed = seed;
  sc.world.bounds = {Vec3(-0.2, -1.5, 0.0), Vec3(6.2, 1.5, 2.5)};
  // fine grid: cube faces land mid-voxel for almost every draw, and the
  // corner optimism of the carve scales with the resolution
  sc.world.resolution = 0.05;
  sc.start.pos.head<3>() = Vec3(0.2, 0, 1.2);
  sc.start.pos.tail<3>() = Vec3(0, 0, -0.15);
  sc.goal.pos.head<3>() = Vec3(5.8, 0, 1.2);
  sc.goal.pos.tail<3>() = Vec3(0, 0, -0.15);
  sc.solve.relative = true;
  sc.solve.max_iters = 8000;
  // compensate the half-voxel optimism of the rasterization
  sc.params.d_s = 0.06;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.8, 5.2), uy(-1.3, 1.3),
      uz(0.3, 2.0);
  const double side = 0.4;
  while (sc.world.boxes.size() < 12) {
    const Vec3 center(ux(rng), uy(rng), uz(rng));
    if ((center - sc.start.pos.head<3>()).norm() < 0.7) continue;
    if ((center - sc.goal.pos.head<3>()).norm() < 0.7) continue;
    sc.world.boxes.push_back({center - Vec3::Constant(0.5 * side),
                              center + Vec3::Constant(0.5 * side)});
  }
  return sc;
}

// ---------------------------------------------------------------------------
// Flat grasp with the three manipulator workspace variants.

inline Scenario flat_grasp_scenario(int variant) {
  Scenario sc;
  sc.name = "flat-grasp-" + std::to_string(variant);
  sc.world.bounds = {Vec3(-0.5, -1.0, 0.0), Vec3(3.5, 1.0, 2.0)};
  sc.world.resolution = 0.1;
  switch (variant) {
    case 0:  // telescopic: vertical motion only
      sc.params.workspace_lo = Vec3(-0.01, -0.01, -0.25);
      sc.params.workspace_hi = Vec3(0.01, 0.01, -0.06);
      break;
    case 1:  // 1-DOF arc in the xz plane, radius 0.18
      sc.params.workspace_lo = Vec3(-0.12, -0.01, -0.24);
      sc.params.workspace_hi = Vec3(0.12, 0.01, -0.10);
      break;
    default:  // 2-DOF planar
      sc.params.workspace_lo = Vec3(-0.20, -0.01, -0.25);
      sc.params.workspace_hi = Vec3(0.20, 0.01, -0.06);
      break;
  }
  const double ze =
      0.5 * (sc.params.workspace_lo.z() + sc.params.workspace_hi.z());
  sc.start.pos.head<3>() = Vec3(0, 0, 1.15);
  sc.start.pos.tail<3>() = Vec3(0, 0, ze);
  sc.goal.pos.head<3>() = Vec3(3, 0, 1.15);
  sc.goal.pos.tail<3>() = Vec3(0, 0, ze);
  sc.solve.relative = true;

  WaypointConstraint c;
  c.kind = WaypointConstraint::Kind::kEndEffector;
  c.position = Vec3(1.5, 0, 0.9);
  c.velocity = VelocitySpec{Vec3::Ones(), Vec3::Zero()};
  sc.constraints.push_back(c);
  return sc;
}

// ---------------------------------------------------------------------------
// Nine-skill preset library.

inline std::vector<std::string> skill_names() {
  return {"strike", "grasp", "lift", "press", "wind",
          "pull",   "push",  "cross", "write"};
}

inline Scenario skill_preset(const std::string& name) {
  if (name == "strike") {
    return make_incline_task(Skill::kStrike, deg2rad(40.0), Vec2(1.6, -1.6))
        .scenario;
  }
  if (name == "grasp") {
    return make_incline_task(Skill::kGrasp, deg2rad(20.0), Vec2(1.6, -1.6))
        .scenario;
  }
  Scenario sc;
  sc.name = name;
  sc.world.bounds = {Vec3(-0.5, -1.2, 0.0), Vec3(3.5, 1.2, 2.4)};
  sc.world.resolution = 0.1;
  sc.start.pos.head<3>() = Vec3(0, 0, 1.2);
  sc.start.pos.tail<3>() = Vec3(0, 0, -0.15);
  sc.goal.pos.head<3>() = Vec3(3, 0, 1.2);
  sc.goal.pos.tail<3>() = Vec3(0, 0, -0.15);
  sc.solve.relative = true;

  if (name == "lift") {
    sc.world.boxes.push_back({Vec3(1.3, -0.3, 0.0), Vec3(1.7, 0.3, 0.5)});
    WaypointConstraint c;
    c.kind = WaypointConstraint::Kind::kEndEffector;
    c.position = Vec3(1.5, 0, 0.56);
    c.velocity = VelocitySpec{Vec3::Ones(), Vec3::Zero()};
    sc.constraints.push_back(c);
    sc.goal.pos.head<3>() = Vec3(3, 0, 1.6);
  } else if (name == "press") {
    sc.world.boxes.push_back({Vec3(1.2, -0.4, 0.0), Vec3(1.8, 0.4, 0.5)});
    WaypointConstraint c;
    c.kind = WaypointConstraint::Kind::kEndEffector;
    c.position = Vec3(1.5, 0, 0.56);
    c.orientation = OrientationSpec{Vec3::UnitZ()};
    c.velocity = VelocitySpec{Vec3(0, 0, 1), Vec3(0, 0, -0.15)};
    sc.constraints.push_back(c);
  } else if (name == "wind") {
    // wrap around the pole while holding the string height
    sc.world.boxes.push_back({Vec3(1.4, -0.1, 0.0), Vec3(1.6, 0.1, 2.4)});
    sc.start.pos.head<3>() = Vec3(0, -0.8, 1.2);
    sc.goal.pos.head<3>() = Vec3(0.3, 0.8, 1.2);
    auto quad_wp = [](const Vec3& p) {
      WaypointConstraint c;
      c.kind = WaypointConstraint::Kind::kQuadrotor;
      c.position = p;
      return c;
    };
    sc.constraints.push_back(quad_wp(Vec3(2.3, -0.7, 1.2)));
    sc.constraints.push_back(quad_wp(Vec3(2.3, 0.7, 1.2)));
    SegmentMotionConstraint mc;
    mc.mask = Vec3(0, 0, 1);
    mc.anchor = Vec3(0, 0, 1.0);
    mc.around_constraint = 0;
    sc.motions.push_back(mc);
  } else if (name == "pull") {
    sc.world.boxes.push_back({Vec3(1.8, -0.5, 0.4), Vec3(2.4, 0.5, 1.6)});
    WaypointConstraint c;
    c.kind = WaypointConstraint::Kind::kEndEffector;
    c.position = Vec3(1.72, 0, 1.0);
    c.surface = SurfaceSpec{Vec3(1.8, 0, 1.0), Vec3(-1, 0, 0),
                            Eigen::Vector2d(0.5, 0.6)};
    c.velocity = VelocitySpec{Vec3::Ones(), Vec3::Zero()};
    sc.constraints.push_back(c);
    sc.goal.pos.head<3>() = Vec3(0.3, 0, 1.2);
    sc.weights.f_ext = Vec3(0.8, 0, 0);  // drawer resistance on the tool
  } else if (name == "push") {
    WaypointConstraint c;
    c.kind = WaypointConstraint::Kind::kEndEffector;
    c.position = Vec3(1.5, 0, 0.9);
    c.velocity = VelocitySpec{Vec3::Ones(), Vec3(0.3, 0, 0)};
    sc.constraints.push_back(c);
  } else if (name == "cross") {
    return narrow_gate_scenario(0.4);
  } else if (name == "write") {
    // two strokes on a vertical board at y = 1.0
    Slab board;
    board.point = Vec3(1.5, 1.05, 1.2);
    board.normal = Vec3(0, -1, 0);
    board.half_extents = Eigen::Vector2d(1.0, 0.8);
    board.thickness = 0.1;
    sc.world.slabs.push_back(board);
    sc.start.pos.head<3>() = Vec3(0.4, 0, 1.2);
    sc.goal.pos.head<3>() = Vec3(2.6, 0, 1.2);
    auto stroke = [](const Vec3& p) {
      WaypointConstraint c;
      c.kind = WaypointConstraint::Kind::kEndEffector;
      c.position = p;
      c.surface = SurfaceSpec{Vec3(p.x(), 1.0, p.z()), Vec3(0, -1, 0),
                              Eigen::Vector2d(0.9, 0.7)};
      return c;
    };
    sc.constraints.push_back(stroke(Vec3(1.2, 0.98, 1.35)));
    sc.constraints.push_back(stroke(Vec3(1.8, 0.98, 1.05)));
  } else {
    throw InvalidScenario("skill_preset: unknown skill " + name);
  }
  return sc;
}

}  // namespace ampl

#endif  // AMPL_PRESETS_HPP_
