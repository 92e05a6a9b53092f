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

#ifndef AMPL_COSTS_HPP_
#define AMPL_COSTS_HPP_

#include <array>
#include <cmath>
#include <vector>

#include "ampl/constraints.hpp"
#include "ampl/corridor.hpp"
#include "ampl/dual.hpp"
#include "ampl/flatness.hpp"
#include "ampl/spline.hpp"

namespace ampl {

struct CostBreakdown {
  double smooth = 0.0;
  double time = 0.0;
  double safety = 0.0;
  double workspace = 0.0;
  double velocity = 0.0;
  double bodyrate = 0.0;
  double thrust = 0.0;
  double ee_waypoint = 0.0;
  double axis = 0.0;
  double vel_cons = 0.0;
  double orientation = 0.0;

  double total() const {
    return smooth + time + safety + workspace + velocity + bodyrate + thrust +
           ee_waypoint + axis + vel_cons + orientation;
  }
};

// Gradients w.r.t. the stacked segment coefficients and the durations
// (direct part only); routed to decision variables by Trajectory6::backprop.
struct CostGrads {
  MatX dJ_dC;
  VecX dJ_dT;

  explicit CostGrads(int segments)
      : dJ_dC(MatX::Zero(kCoeffs * segments, 6)),
        dJ_dT(VecX::Zero(segments)) {}
};

// C2 penalty K(x) = max(x, 0)^3.
inline double cubic_penalty(double x, double* slope) {
  if (x <= 0.0) {
    *slope = 0.0;
    return 0.0;
  }
  *slope = 3.0 * x * x;
  return x * x * x;
}

namespace detail {

using NodeGrad = std::array<Vec6, 4>;  // d(penalty)/d(derivative order 0..3)

inline NodeGrad zero_node_grad() {
  return {Vec6::Zero(), Vec6::Zero(), Vec6::Zero(), Vec6::Zero()};
}

// Routes one discretization-node penalty into the coefficient and duration
// gradients, including the duration chain through the node time n*T/N and
// the quadrature weight T/N.
inline void add_node_term(const Trajectory6& traj, int seg, int n, int num,
                          double w, double pen, const NodeGrad& dg,
                          CostGrads& g) {
  const double t_seg = traj.durations()[seg];
  const double t_local = t_seg * n / num;
  const double wt = w * t_seg / num;
  double tchain = pen / num;
  for (int d = 0; d < 4; ++d) {
    if (dg[d].isZero(0.0)) continue;
    g.dJ_dC.block<kCoeffs, 6>(kCoeffs * seg, 0) +=
        wt * basis(t_local, d) * dg[d].transpose();
    tchain += (t_seg / num) * dg[d].dot(traj.eval_segment(seg, t_local, d + 1)) *
              (static_cast<double>(n) / num);
  }
  g.dJ_dT[seg] += w * tchain;
}

// Junction quantity evaluated at the start of `seg` (local time 0): no
// quadrature weight and no duration dependence.
inline void add_junction_term(int seg, double w, const NodeGrad& dg,
                              CostGrads& g) {
  for (int d = 0; d < 4; ++d) {
    if (dg[d].isZero(0.0)) continue;
    g.dJ_dC.block<kCoeffs, 6>(kCoeffs * seg, 0) +=
        w * basis(0.0, d) * dg[d].transpose();
  }
}

// Thrust-aligned body frame as duals of whatever the acceleration was
// seeded with.
template <int ND>
struct DualFrame {
  DualVec3<ND> f, x_b, y_b, z_b;
  Dual<ND> f_norm;
};

template <int ND>
DualFrame<ND> dual_frame(const DualVec3<ND>& acc, const Vec3& f_ext,
                         const AmParams& p) {
  DualFrame<ND> out;
  for (int i = 0; i < 3; ++i) {
    out.f[i] = p.m_c * (acc[i] + (i == 2 ? p.g : 0.0)) - f_ext[i];
  }
  out.f_norm = dual_norm(out.f);
  if (out.f_norm.v <= 1e-6) {
    throw DegenerateThrust("cost: vanishing thrust at a node");
  }
  out.z_b = out.f / out.f_norm;
  const DualVec3<ND> e1 = dual_const_vec3<ND>(Vec3::UnitX());
  const DualVec3<ND> u = dual_cross(out.z_b, e1);
  const Dual<ND> un = dual_norm(u);
  if (un.v < 1e-9) {
    throw GimbalDegenerate("cost: thrust axis parallel to x at a node");
  }
  out.y_b = u / un;
  out.x_b = dual_cross(out.y_b, out.z_b);
  return out;
}

}  // namespace detail

// J_c + rho * J_t in closed form.
inline double cost_smooth_time(const Trajectory6& traj, double rho,
                               CostGrads& g, double* j_time = nullptr) {
  double jc = 0.0;
  const VecX& dur = traj.durations();
  for (int i = 0; i < traj.segments(); ++i) {
    const double t = dur[i];
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const auto c = traj.seg_coeffs(i);
    for (int k = 0; k < 6; ++k) {
      const double c3 = c(3, k), c4 = c(4, k), c5 = c(5, k);
      jc += 36.0 * c3 * c3 * t + 144.0 * c3 * c4 * t2 +
            (192.0 * c4 * c4 + 240.0 * c3 * c5) * t3 +
            720.0 * c4 * c5 * t4 + 720.0 * c5 * c5 * t5;
      g.dJ_dC(kCoeffs * i + 3, k) +=
          72.0 * c3 * t + 144.0 * c4 * t2 + 240.0 * c5 * t3;
      g.dJ_dC(kCoeffs * i + 4, k) +=
          144.0 * c3 * t2 + 384.0 * c4 * t3 + 720.0 * c5 * t4;
      g.dJ_dC(kCoeffs * i + 5, k) +=
          240.0 * c3 * t3 + 720.0 * c4 * t4 + 1440.0 * c5 * t5;
      g.dJ_dT[i] += 36.0 * c3 * c3 + 288.0 * c3 * c4 * t +
                    3.0 * (192.0 * c4 * c4 + 240.0 * c3 * c5) * t2 +
                    2880.0 * c4 * c5 * t3 + 3600.0 * c5 * c5 * t4;
    }
    g.dJ_dT[i] += rho;
  }
  if (j_time) *j_time = rho * dur.sum();
  return jc + rho * dur.sum();
}

struct CollisionModel {
  bool varying = true;
  // z semi-axis used when `varying` is false
  double fixed_h = 0.235;
};

// Corridor safety penalty with the varying-ellipsoid support point.
inline double cost_safety(const Trajectory6& traj, const Corridor& corridor,
                          const AmParams& p, const Weights& w,
                          const CollisionModel& cm, CostGrads& g) {
  double total = 0.0;
  const int num = w.N;
  for (int i = 0; i < traj.segments(); ++i) {
    const Polyhedron& poly = corridor.polys[i];
    for (int n = 0; n < num; ++n) {
      const double tl = traj.durations()[i] * n / num;
      const Vec6 v0 = traj.eval_segment(i, tl, 0);
      const Vec6 v2 = traj.eval_segment(i, tl, 2);
      const Vec3 p_b = v0.head<3>();
      const double pe_z = v0[5];

      // duals over (acc, pe_z)
      const auto frame =
          detail::dual_frame<4>(dual_seed_vec3<4>(v2.head<3>(), 0), w.f_ext, p);
      Dual<4> h(cm.varying ? p.p_B_in_D.z() - Dual<4>::seed(pe_z, 3)
                           : Dual<4>(cm.fixed_h));
      if (cm.varying && h.v < p.r_e) h = Dual<4>(p.r_e);

      double pen_sum = 0.0;
      auto dg = detail::zero_node_grad();
      for (const Halfplane& hp : poly.halfplanes) {
        const double nn = hp.n.norm();
        const Vec3 nh = hp.n / nn;
        const double bh = hp.b / nn;
        const DualVec3<4> nh_d = dual_const_vec3<4>(nh);
        DualVec3<4> gy;
        gy[0] = p.r_e * dual_dot(frame.x_b, nh_d);
        gy[1] = p.r_e * dual_dot(frame.y_b, nh_d);
        gy[2] = h * dual_dot(frame.z_b, nh_d);
        const Dual<4> arg = p_b.dot(nh) - bh + dual_norm(gy) + p.d_s;
        double slope;
        const double pen = cubic_penalty(arg.v, &slope);
        if (pen == 0.0) continue;
        pen_sum += pen;
        dg[0].head<3>() += slope * nh;
        dg[0][5] += slope * arg.d[3];
        dg[2].head<3>() += slope * arg.d.head<3>();
      }
      if (pen_sum > 0.0) {
        detail::add_node_term(traj, i, n, num, w.w_safety, pen_sum, dg, g);
        total += w.w_safety * (traj.durations()[i] / num) * pen_sum;
      }
    }
  }
  return total;
}

// Delta-arm workspace cuboid penalty, squared-bound form on |component|.
inline double cost_workspace(const Trajectory6& traj, const AmParams& p,
                             const Weights& w, CostGrads& g) {
  double total = 0.0;
  const int num = w.N;
  for (int i = 0; i < traj.segments(); ++i) {
    for (int n = 0; n < num; ++n) {
      const double tl = traj.durations()[i] * n / num;
      const Vec6 v0 = traj.eval_segment(i, tl, 0);
      double pen_sum = 0.0;
      auto dg = detail::zero_node_grad();
      for (int k = 0; k < 3; ++k) {
        const double s = v0[3 + k];
        const double lo = p.workspace_lo[k];
        const double hi = p.workspace_hi[k];
        double slope;
        // positive outside [lo, hi] on either side, sign-aware
        const double pen = cubic_penalty((s - lo) * (s - hi), &slope);
        if (pen > 0.0) {
          pen_sum += pen;
          dg[0][3 + k] += slope * (2.0 * s - lo - hi);
        }
      }
      if (pen_sum > 0.0) {
        detail::add_node_term(traj, i, n, num, w.w_workspace, pen_sum, dg, g);
        total += w.w_workspace * (traj.durations()[i] / num) * pen_sum;
      }
    }
  }
  return total;
}

// Quadrotor and end-effector speed limits.
inline double cost_velocity(const Trajectory6& traj, const AmParams& p,
                            const Weights& w, CostGrads& g) {
  double total = 0.0;
  const int num = w.N;
  for (int i = 0; i < traj.segments(); ++i) {
    for (int n = 0; n < num; ++n) {
      const double tl = traj.durations()[i] * n / num;
      const Vec6 v1 = traj.eval_segment(i, tl, 1);
      double pen_sum = 0.0;
      auto dg = detail::zero_node_grad();
      double slope;
      double pen = cubic_penalty(
          v1.head<3>().squaredNorm() - p.v_b_max * p.v_b_max, &slope);
      if (pen > 0.0) {
        pen_sum += pen;
        dg[1].head<3>() += slope * 2.0 * v1.head<3>();
      }
      pen = cubic_penalty(v1.tail<3>().squaredNorm() - p.v_e_max * p.v_e_max,
                          &slope);
      if (pen > 0.0) {
        pen_sum += pen;
        dg[1].tail<3>() += slope * 2.0 * v1.tail<3>();
      }
      if (pen_sum > 0.0) {
        detail::add_node_term(traj, i, n, num, w.w_vel, pen_sum, dg, g);
        total += w.w_vel * (traj.durations()[i] / num) * pen_sum;
      }
    }
  }
  return total;
}

// xy body-rate limit through the flatness chain.
inline double cost_bodyrate(const Trajectory6& traj, const AmParams& p,
                            const Weights& w, CostGrads& g) {
  double total = 0.0;
  const int num = w.N;
  for (int i = 0; i < traj.segments(); ++i) {
    for (int n = 0; n < num; ++n) {
      const double tl = traj.durations()[i] * n / num;
      const Vec6 v2 = traj.eval_segment(i, tl, 2);
      const Vec6 v3 = traj.eval_segment(i, tl, 3);
      const auto frame =
          detail::dual_frame<6>(dual_seed_vec3<6>(v2.head<3>(), 0), w.f_ext, p);
      const DualVec3<6> jerk = dual_seed_vec3<6>(v3.head<3>(), 3);
      DualVec3<6> mj;
      for (int k = 0; k < 3; ++k) mj[k] = p.m_c * jerk[k];
      const Dual<6> zj = dual_dot(frame.z_b, mj);
      DualVec3<6> zdot;
      for (int k = 0; k < 3; ++k) {
        zdot[k] = (mj[k] - zj * frame.z_b[k]) / frame.f_norm;
      }
      const Dual<6> wx = -dual_dot(frame.y_b, zdot);
      const Dual<6> wy = dual_dot(frame.x_b, zdot);
      const Dual<6> mag = wx * wx + wy * wy;
      double slope;
      const double pen =
          cubic_penalty(mag.v - p.omega_xy_max * p.omega_xy_max, &slope);
      if (pen > 0.0) {
        auto dg = detail::zero_node_grad();
        dg[2].head<3>() = slope * mag.d.head<3>();
        dg[3].head<3>() = slope * mag.d.tail<3>();
        detail::add_node_term(traj, i, n, num, w.w_bodyrate, pen, dg, g);
        total += w.w_bodyrate * (traj.durations()[i] / num) * pen;
      }
    }
  }
  return total;
}

// Collective thrust bounds.
inline double cost_thrust(const Trajectory6& traj, const AmParams& p,
                          const Weights& w, CostGrads& g) {
  double total = 0.0;
  const int num = w.N;
  for (int i = 0; i < traj.segments(); ++i) {
    for (int n = 0; n < num; ++n) {
      const double tl = traj.durations()[i] * n / num;
      const Vec6 v2 = traj.eval_segment(i, tl, 2);
      const Vec3 f =
          p.m_c * (v2.head<3>() + p.g * Vec3::UnitZ()) - w.f_ext;
      const double f2 = f.squaredNorm();
      double pen_sum = 0.0;
      auto dg = detail::zero_node_grad();
      double slope;
      double pen = cubic_penalty(f2 - p.f_hi * p.f_hi, &slope);
      if (pen > 0.0) {
        pen_sum += pen;
        dg[2].head<3>() += slope * 2.0 * p.m_c * f;
      }
      pen = cubic_penalty(p.f_lo * p.f_lo - f2, &slope);
      if (pen > 0.0) {
        pen_sum += pen;
        dg[2].head<3>() -= slope * 2.0 * p.m_c * f;
      }
      if (pen_sum > 0.0) {
        detail::add_node_term(traj, i, n, num, w.w_thrust, pen_sum, dg, g);
        total += w.w_thrust * (traj.durations()[i] / num) * pen_sum;
      }
    }
  }
  return total;
}

namespace detail {

// World end-effector position as duals over (acc, D-frame p_e): dirs 0..2
// seed the acceleration, 3..5 the delta-frame end-effector position.
inline DualVec3<6> dual_pe_world(const DualFrame<6>& frame,
                                 const DualVec3<6>& pe_d, const Vec3& p_b,
                                 const AmParams& p) {
  DualVec3<6> arm;
  for (int k = 0; k < 3; ++k) arm[k] = p.p_D_in_B[k] + pe_d[k];
  DualVec3<6> out;
  for (int k = 0; k < 3; ++k) {
    out[k] = frame.x_b[k] * arm[0] + frame.y_b[k] * arm[1] +
             frame.z_b[k] * arm[2] + p_b[k];
  }
  return out;
}

}  // namespace detail

// Soft end-effector waypoint attraction at the mapped junctions.
inline double cost_ee_waypoint(const Trajectory6& traj,
                               const std::vector<WaypointConstraint>& cons,
                               const Corridor& corridor, const AmParams& p,
                               const Weights& w, CostGrads& g) {
  double total = 0.0;
  for (const auto& [lam, j] : corridor.phi) {
    const WaypointConstraint& c = cons[lam];
    if (c.kind != WaypointConstraint::Kind::kEndEffector) continue;
    const int seg = j + 1;
    const Vec6 v0 = traj.eval_segment(seg, 0.0, 0);
    const Vec6 v2 = traj.eval_segment(seg, 0.0, 2);
    const auto frame =
        detail::dual_frame<6>(dual_seed_vec3<6>(v2.head<3>(), 0), w.f_ext, p);
    const DualVec3<6> pe_d = dual_seed_vec3<6>(v0.tail<3>(), 3);
    const DualVec3<6> pe_w =
        detail::dual_pe_world(frame, pe_d, v0.head<3>(), p);
    Dual<6> val(0.0);
    Vec3 err;
    for (int k = 0; k < 3; ++k) {
      const Dual<6> e = pe_w[k] - c.position[k];
      err[k] = e.v;
      val += e * e;
    }
    auto dg = detail::zero_node_grad();
    dg[0].head<3>() = 2.0 * err;  // p_b enters the world map directly
    dg[0].tail<3>() = val.d.tail<3>();
    dg[2].head<3>() = val.d.head<3>();
    detail::add_junction_term(seg, w.w_ee_waypoint, dg, g);
    total += w.w_ee_waypoint * val.v;
  }
  return total;
}

// Axis-wise end-effector motion restriction over tagged segments.
inline double cost_axis_motion(const Trajectory6& traj,
                               const std::vector<SegmentMotionConstraint>& mcs,
                               const AmParams& p, const Weights& w,
                               CostGrads& g) {
  double total = 0.0;
  const int num = w.N;
  for (const SegmentMotionConstraint& mc : mcs) {
    for (int seg : mc.active_segments) {
      if (seg < 0 || seg >= traj.segments()) continue;
      for (int n = 0; n < num; ++n) {
        const double tl = traj.durations()[seg] * n / num;
        const Vec6 v0 = traj.eval_segment(seg, tl, 0);
        const Vec6 v2 = traj.eval_segment(seg, tl, 2);
        const auto frame = detail::dual_frame<6>(
            dual_seed_vec3<6>(v2.head<3>(), 0), w.f_ext, p);
        const DualVec3<6> pe_d = dual_seed_vec3<6>(v0.tail<3>(), 3);
        const DualVec3<6> pe_w =
            detail::dual_pe_world(frame, pe_d, v0.head<3>(), p);
        Dual<6> val(0.0);
        Vec3 err = Vec3::Zero();
        for (int k = 0; k < 3; ++k) {
          if (mc.mask[k] == 0.0) continue;
          const Dual<6> e = pe_w[k] - mc.anchor[k];
          err[k] = e.v;
          val += e * e;
        }
        auto dg = detail::zero_node_grad();
        dg[0].head<3>() = 2.0 * err;
        dg[0].tail<3>() = val.d.tail<3>();
        dg[2].head<3>() = val.d.head<3>();
        detail::add_node_term(traj, seg, n, num, w.w_axis, val.v, dg, g);
        total += w.w_axis * (traj.durations()[seg] / num) * val.v;
      }
    }
  }
  return total;
}

// Masked velocity targets at constrained junctions.
inline double cost_velocity_cons(const Trajectory6& traj,
                                 const std::vector<WaypointConstraint>& cons,
                                 const Corridor& corridor, const AmParams& p,
                                 const Weights& w, CostGrads& g) {
  double total = 0.0;
  for (const auto& [lam, j] : corridor.phi) {
    const WaypointConstraint& c = cons[lam];
    if (!c.velocity) continue;
    const int seg = j + 1;
    const Vec3 mask = c.velocity->mask;
    const Vec3 v_des = c.velocity->v_des;

    if (c.kind == WaypointConstraint::Kind::kQuadrotor) {
      const Vec6 v1 = traj.eval_segment(seg, 0.0, 1);
      double val = 0.0;
      auto dg = detail::zero_node_grad();
      for (int k = 0; k < 3; ++k) {
        if (mask[k] == 0.0) continue;
        const double e = v1[k] - v_des[k];
        val += e * e;
        dg[1][k] = 2.0 * e;
      }
      detail::add_junction_term(seg, w.w_vel_cons, dg, g);
      total += w.w_vel_cons * val;
      continue;
    }

    // end-effector world velocity: dirs 0..2 acc, 3..5 jerk, 6..8 D-frame
    // position, 9..11 D-frame velocity
    const Vec6 v0 = traj.eval_segment(seg, 0.0, 0);
    const Vec6 v1 = traj.eval_segment(seg, 0.0, 1);
    const Vec6 v2 = traj.eval_segment(seg, 0.0, 2);
    const Vec6 v3 = traj.eval_segment(seg, 0.0, 3);
    const auto frame =
        detail::dual_frame<12>(dual_seed_vec3<12>(v2.head<3>(), 0), w.f_ext, p);
    const DualVec3<12> jerk = dual_seed_vec3<12>(v3.head<3>(), 3);
    const DualVec3<12> pe_d = dual_seed_vec3<12>(v0.tail<3>(), 6);
    const DualVec3<12> ve_d = dual_seed_vec3<12>(v1.tail<3>(), 9);

    DualVec3<12> mj;
    for (int k = 0; k < 3; ++k) mj[k] = p.m_c * jerk[k];
    const Dual<12> zj = dual_dot(frame.z_b, mj);
    DualVec3<12> zdot;
    for (int k = 0; k < 3; ++k) {
      zdot[k] = (mj[k] - zj * frame.z_b[k]) / frame.f_norm;
    }
    const DualVec3<12> e1 = dual_const_vec3<12>(Vec3::UnitX());
    const DualVec3<12> u = dual_cross(frame.z_b, e1);
    const Dual<12> un = dual_norm(u);
    const DualVec3<12> udot = dual_cross(zdot, e1);
    const Dual<12> uu = dual_dot(u, udot);
    DualVec3<12> ydot;
    for (int k = 0; k < 3; ++k) {
      ydot[k] = udot[k] / un - u[k] * uu / (un * un * un);
    }
    const DualVec3<12> xdot =
        dual_cross(ydot, frame.z_b) + dual_cross(frame.y_b, zdot);

    DualVec3<12> arm;
    for (int k = 0; k < 3; ++k) arm[k] = p.p_D_in_B[k] + pe_d[k];
    Dual<12> val(0.0);
    Vec3 err = Vec3::Zero();
    for (int k = 0; k < 3; ++k) {
      if (mask[k] == 0.0) continue;
      const Dual<12> ve_w = v1[k] + xdot[k] * arm[0] + ydot[k] * arm[1] +
                            zdot[k] * arm[2] + frame.x_b[k] * ve_d[0] +
                            frame.y_b[k] * ve_d[1] + frame.z_b[k] * ve_d[2];
      const Dual<12> e = ve_w - v_des[k];
      err[k] = e.v;
      val += e * e;
    }
    auto dg = detail::zero_node_grad();
    dg[1].head<3>() = 2.0 * err;  // quadrotor velocity enters directly
    dg[2].head<3>() = val.d.segment<3>(0);
    dg[3].head<3>() = val.d.segment<3>(3);
    dg[0].tail<3>() = val.d.segment<3>(6);
    dg[1].tail<3>() += val.d.segment<3>(9);
    detail::add_junction_term(seg, w.w_vel_cons, dg, g);
    total += w.w_vel_cons * val.v;
  }
  return total;
}

// Thrust-direction alignment at constrained junctions.
inline double cost_orientation(const Trajectory6& traj,
                               const std::vector<WaypointConstraint>& cons,
                               const Corridor& corridor, const AmParams& p,
                               const Weights& w, CostGrads& g) {
  double total = 0.0;
  for (const auto& [lam, j] : corridor.phi) {
    const WaypointConstraint& c = cons[lam];
    if (!c.orientation) continue;
    const int seg = j + 1;
    const Vec6 v2 = traj.eval_segment(seg, 0.0, 2);
    const DualVec3<3> acc = dual_seed_vec3<3>(v2.head<3>(), 0);
    DualVec3<3> f;
    for (int k = 0; k < 3; ++k) {
      f[k] = p.m_c * (acc[k] + (k == 2 ? p.g : 0.0)) - w.f_ext[k];
    }
    const Dual<3> fn = dual_norm(f);
    const Vec3 o_des = c.orientation->o_des.normalized();
    Dual<3> val(0.0);
    for (int k = 0; k < 3; ++k) {
      const Dual<3> e = f[k] - fn * o_des[k];
      val += e * e;
    }
    auto dg = detail::zero_node_grad();
    dg[2].head<3>() = val.d;
    detail::add_junction_term(seg, w.w_orient, dg, g);
    total += w.w_orient * val.v;
  }
  return total;
}

struct CostContext {
  Corridor corridor;
  std::vector<WaypointConstraint> constraints;
  std::vector<SegmentMotionConstraint> motions;
  AmParams params;
  Weights weights;
  CollisionModel collision;
  bool use_safety = true;
};

// Full objective with gradients routed to the decision variables.
inline double total_cost(const Trajectory6& traj, const CostContext& ctx,
                         MatX* dJ_dP, MatX* dJ_dQ, VecX* dJ_dtau,
                         CostBreakdown* breakdown = nullptr) {
  CostGrads g(traj.segments());
  CostBreakdown bd;
  double j_time = 0.0;
  const double smooth_and_time =
      cost_smooth_time(traj, ctx.weights.rho_time, g, &j_time);
  bd.time = j_time;
  bd.smooth = smooth_and_time - j_time;
  if (ctx.use_safety && !ctx.corridor.polys.empty()) {
    bd.safety = cost_safety(traj, ctx.corridor, ctx.params, ctx.weights,
                            ctx.collision, g);
  }
  bd.workspace = cost_workspace(traj, ctx.params, ctx.weights, g);
  bd.velocity = cost_velocity(traj, ctx.params, ctx.weights, g);
  bd.bodyrate = cost_bodyrate(traj, ctx.params, ctx.weights, g);
  bd.thrust = cost_thrust(traj, ctx.params, ctx.weights, g);
  bd.ee_waypoint = cost_ee_waypoint(traj, ctx.constraints, ctx.corridor,
                                    ctx.params, ctx.weights, g);
  bd.axis =
      cost_axis_motion(traj, ctx.motions, ctx.params, ctx.weights, g);
  bd.vel_cons = cost_velocity_cons(traj, ctx.constraints, ctx.corridor,
                                   ctx.params, ctx.weights, g);
  bd.orientation = cost_orientation(traj, ctx.constraints, ctx.corridor,
                                    ctx.params, ctx.weights, g);
  if (dJ_dP && dJ_dQ && dJ_dtau) {
    traj.backprop(g.dJ_dC, g.dJ_dT, *dJ_dP, *dJ_dQ, *dJ_dtau);
  }
  if (breakdown) *breakdown = bd;
  return bd.total();
}

}  // namespace ampl

#endif  // AMPL_COSTS_HPP_
