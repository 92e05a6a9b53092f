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

#ifndef AMPL_CONSTRAINTS_HPP_
#define AMPL_CONSTRAINTS_HPP_

#include <optional>
#include <vector>

#include "ampl/common.hpp"
#include "ampl/params.hpp"

namespace ampl {

// Task surface patch: a point on the surface, outward unit normal, and
// in-plane half extents.
struct SurfaceSpec {
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();
  Eigen::Vector2d half_extents = Eigen::Vector2d(0.5, 0.5);
};

// Masked velocity target at a constrained waypoint.
struct VelocitySpec {
  Vec3 mask = Vec3::Ones();  // entries in {0,1}
  Vec3 v_des = Vec3::Zero();
};

// Thrust-direction target at a constrained waypoint.
struct OrientationSpec {
  Vec3 o_des = Vec3::UnitZ();  // unit
};

struct WaypointConstraint {
  enum class Kind { kQuadrotor, kEndEffector };

  Kind kind = Kind::kQuadrotor;
  Vec3 position = Vec3::Zero();  // p_b target or p_e target, world frame
  std::optional<VelocitySpec> velocity;
  std::optional<OrientationSpec> orientation;
  std::optional<SurfaceSpec> surface;
  bool guide = false;
  // Optional override for the quadrotor position used in path search and
  // corridor construction.
  std::optional<Vec3> approach;

  // Quadrotor-frame point this constraint pins on the reference path.
  Vec3 path_point(const AmParams& params) const {
    if (approach) return *approach;
    if (kind == Kind::kQuadrotor) return position;
    const Vec3 n = surface ? surface->normal.normalized() : Vec3::UnitZ();
    return position + params.p_e0_in_B.norm() * n;
  }
};

// Axis-wise end-effector motion restriction over tagged segments. When
// around_constraint >= 0 the active segments are resolved after corridor
// construction to the two segments meeting at that constraint's junction.
struct SegmentMotionConstraint {
  std::vector<int> active_segments;
  Vec3 mask = Vec3::Zero();  // entries in {0,1}
  Vec3 anchor = Vec3::Zero();
  int around_constraint = -1;
};

struct Weights {
  double rho_time = 20.0;
  double w_safety = 1e4;
  double w_workspace = 1e4;
  double w_vel = 1e3;
  double w_bodyrate = 1e3;
  double w_thrust = 1e3;
  double w_ee_waypoint = 1e5;
  double w_axis = 1e4;
  double w_vel_cons = 1e4;
  double w_orient = 1e4;
  int N = 16;
  Vec3 f_ext = Vec3::Zero();
};

}  // namespace ampl

#endif  // AMPL_CONSTRAINTS_HPP_
