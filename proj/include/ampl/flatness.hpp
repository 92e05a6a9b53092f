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

#ifndef AMPL_FLATNESS_HPP
#define AMPL_FLATNESS_HPP

#include <cmath>
#include <tuple>

#include "ampl/common.hpp"
#include "ampl/params.hpp"

namespace ampl {

/// Attitude, thrust and xy body rates from the flat outputs. Yaw is fixed at
/// zero and f_ext is treated as constant, so the body-rate chain only sees
/// the thrust-axis motion induced by jerk.
inline AttitudeState flat_to_attitude(const Vec3& acc_b, const Vec3& jerk_b,
                                      const Vec3& f_ext,
                                      const AmParams& params) {
  const Vec3 f = params.m_c * (acc_b + params.g * Vec3::UnitZ()) - f_ext;
  const double fn = f.norm();
  if (fn <= 1e-6) throw DegenerateThrust("flat_to_attitude: vanishing thrust");
  const Vec3 z_b = f / fn;
  const Vec3 u = z_b.cross(Vec3::UnitX());
  const double un = u.norm();
  if (un < 1e-9) throw GimbalDegenerate("flat_to_attitude: z_B parallel to x");
  const Vec3 y_b = u / un;
  const Vec3 x_b = y_b.cross(z_b);

  const Vec3 zdot =
      (Mat3::Identity() - z_b * z_b.transpose()) * (params.m_c * jerk_b) / fn;

  AttitudeState out;
  out.R_B.col(0) = x_b;
  out.R_B.col(1) = y_b;
  out.R_B.col(2) = z_b;
  out.thrust = fn;
  out.omega_xy = Vec2(-y_b.dot(zdot), x_b.dot(zdot));
  return out;
}

/// z semi-axis of the varying collision ellipsoid, clamped below at r_e so
/// the shape matrix stays positive-definite.
inline double ellipsoid_height(const Vec3& p_e_D, const AmParams& params) {
  const double h = (params.p_B_in_D - p_e_D).dot(Vec3::UnitZ());
  return std::max(h, params.r_e);
}

/// Point on the rotated ellipsoid surface maximizing the inner product with
/// the unit normal n_hat.
inline Vec3 ellipsoid_support(const Mat3& R_B, const Vec3& G_diag,
                              const Vec3& n_hat, const Vec3& p_b) {
  const Vec3 y = R_B.transpose() * n_hat;
  const Vec3 gy = G_diag.cwiseProduct(y);
  Vec3 p_body = G_diag.cwiseProduct(gy) / gy.norm();
  if (p_body.dot(y) < 0.0) p_body = -p_body;
  return R_B * p_body + p_b;
}

/// End-effector wrench and configuration-dependent inertia, reported for
/// diagnostics only; never enters the objective.
inline std::tuple<Vec3, Vec3, Mat3> dynamics_diagnostics(
    const Mat3& R_B, const Vec3& p_e_B, const Vec3& f_ext,
    const AmParams& params) {
  const Vec3 f_e_B = R_B.transpose() * f_ext;
  const Vec3 offset = p_e_B - params.p_e0_in_B;
  const Vec3 tau_e_B =
      p_e_B.cross(f_e_B) +
      offset.cross(R_B.transpose() *
                   (params.m_e * params.g * Vec3::UnitZ()));
  const Mat3 inertia =
      Mat3(params.inertia_diag.asDiagonal()) +
      params.m_e * Mat3(offset.cwiseProduct(offset).asDiagonal());
  return {f_e_B, tau_e_B, inertia};
}

}  // namespace ampl

#endif  // AMPL_FLATNESS_HPP
