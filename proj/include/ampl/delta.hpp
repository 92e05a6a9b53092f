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

#ifndef AMPL_DELTA_HPP
#define AMPL_DELTA_HPP

#include <cmath>

#include "ampl/common.hpp"
#include "ampl/params.hpp"

namespace ampl {

namespace detail {

inline Mat3 arm_rotation(int i) {
  const double gamma = 2.0 * kPi * static_cast<double>(i) / 3.0;
  return Eigen::AngleAxisd(gamma, Vec3::UnitZ()).toRotationMatrix();
}

/// Elbow point of arm i in the delta frame for joint angle q.
inline Vec3 elbow_point(int i, double q, const AmParams& p) {
  return arm_rotation(i) *
         Vec3(p.r_s_eff + p.L_u * std::sin(q), 0.0, -p.L_u * std::cos(q));
}

inline bool in_workspace(const Vec3& p_e_D, const AmParams& p) {
  return (p_e_D.array() >= p.workspace_lo.array()).all() &&
         (p_e_D.array() <= p.workspace_hi.array()).all();
}

// Coefficients of the per-joint equation a*sin(q) + b*cos(q) = c for arm i.
inline void joint_equation(const Vec3& p_e_D, int i, const AmParams& p,
                           double& a, double& b, double& c) {
  const Vec3 u = arm_rotation(i).transpose() * p_e_D;
  a = 2.0 * p.L_u * (p.r_s_eff - u.x());
  b = 2.0 * p.L_u * u.z();
  c = p.L_l * p.L_l - u.squaredNorm() - p.r_s_eff * p.r_s_eff +
      2.0 * u.x() * p.r_s_eff - p.L_u * p.L_u;
}

}  // namespace detail

/// Inverse kinematics of the 3-RSS delta arm. Returns the elbow-out
/// (smaller-|q|) branch for each joint.
inline Vec3 delta_ik(const Vec3& p_e_D, const AmParams& params) {
  if (!detail::in_workspace(p_e_D, params)) {
    throw OutOfWorkspace("delta_ik: point outside workspace cuboid");
  }
  Vec3 q;
  for (int i = 0; i < 3; ++i) {
    double a, b, c;
    detail::joint_equation(p_e_D, i, params, a, b, c);
    const double r = std::sqrt(a * a + b * b);
    if (std::abs(c) > r * (1.0 + 1e-12) || r == 0.0) {
      throw NoSolution("delta_ik: |c| > sqrt(a^2+b^2)");
    }
    const double phi = std::atan2(b, a);
    const double s = std::asin(std::clamp(c / r, -1.0, 1.0));
    double q1 = s - phi;
    double q2 = kPi - s - phi;
    auto wrap = [](double x) {
      while (x > kPi) x -= 2.0 * kPi;
      while (x <= -kPi) x += 2.0 * kPi;
      return x;
    };
    q1 = wrap(q1);
    q2 = wrap(q2);
    q[i] = std::abs(q1) <= std::abs(q2) ? q1 : q2;
  }
  return q;
}

/// Forward kinematics: lower intersection of the three lower-arm spheres.
inline Vec3 delta_fk(const Vec3& q, const AmParams& params) {
  Vec3 e[3];
  for (int i = 0; i < 3; ++i) e[i] = detail::elbow_point(i, q[i], params);
  const double rr = params.L_l * params.L_l;

  // Two difference planes of the sphere equations plus one sphere give a
  // line-sphere intersection.
  Eigen::Matrix<double, 2, 3> a;
  Vec2 rhs;
  for (int k = 0; k < 2; ++k) {
    a.row(k) = 2.0 * (e[k + 1] - e[0]).transpose();
    rhs[k] = e[k + 1].squaredNorm() - e[0].squaredNorm();
  }
  const Vec3 dir = (e[1] - e[0]).cross(e[2] - e[0]);
  if (dir.norm() < 1e-12) throw NoIntersection("delta_fk: collinear elbows");
  const Vec3 x0 = a.colPivHouseholderQr().solve(rhs);
  const Vec3 d = dir.normalized();

  // |x0 + t d - e0|^2 = L_l^2
  const Vec3 w = x0 - e[0];
  const double bq = 2.0 * w.dot(d);
  const double cq = w.squaredNorm() - rr;
  const double disc = bq * bq - 4.0 * cq;
  if (disc < 0.0) throw NoIntersection("delta_fk: spheres do not meet");
  const double sq = std::sqrt(disc);
  const Vec3 s1 = x0 + d * (-bq + sq) / 2.0;
  const Vec3 s2 = x0 + d * (-bq - sq) / 2.0;
  // the physical assembly hangs below the elbow plane
  Vec3 up = dir;
  if (up.z() < 0) up = -up;
  return (s1 - e[0]).dot(up) < (s2 - e[0]).dot(up) ? s1 : s2;
}

/// Jacobian J with qdot = J * (delta-frame end-effector velocity), from the
/// implicit per-joint constraint.
inline Mat3 delta_jacobian(const Vec3& p_e_D, const Vec3& q,
                           const AmParams& params) {
  Mat3 jac;
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = detail::elbow_point(i, q[i], params);
    const Vec3 de = detail::arm_rotation(i) *
                    Vec3(params.L_u * std::cos(q[i]), 0.0,
                         params.L_u * std::sin(q[i]));
    const Vec3 dFdp = 2.0 * (p_e_D - e);
    const double dFdq = -dFdp.dot(de);
    if (std::abs(dFdq) < 1e-9) {
      throw Singular("delta_jacobian: joint near singularity");
    }
    jac.row(i) = -dFdp.transpose() / dFdq;
  }
  return jac;
}

}  // namespace ampl

#endif  // AMPL_DELTA_HPP
