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

#ifndef AMPL_PARAMS_HPP
#define AMPL_PARAMS_HPP

#include "ampl/common.hpp"

namespace ampl {

/// Physical constants of the quadrotor + delta-arm system. SI units.
struct AmParams {
  double m_c = 1.5;    // total system mass [kg]
  double m_e = 0.05;   // end-effector mass [kg]
  Vec3 inertia_diag = Vec3(0.02, 0.02, 0.03);  // I_x, I_y, I_z [kg m^2]
  double g = 9.81;

  Vec3 p_D_in_B = Vec3(0.0, 0.0, -0.03);  // delta-frame origin in body frame
  Vec3 p_B_in_D = Vec3(0.0, 0.0, 0.03);   // body origin in delta frame

  double L_u = 0.09;       // upper arm length [m]
  double L_l = 0.18;       // lower arm length [m]
  double r_s_eff = 0.045;  // effective static-platform radius [m]

  Vec3 workspace_lo = Vec3(-0.10, -0.10, -0.22);
  Vec3 workspace_hi = Vec3(0.10, 0.10, -0.06);

  double v_b_max = 3.0;        // quadrotor speed limit [m/s]
  double v_e_max = 1.0;        // end-effector speed limit (delta frame) [m/s]
  double omega_xy_max = 6.0;   // xy body-rate limit [rad/s]
  double f_lo = 4.0;           // thrust bounds [N]
  double f_hi = 40.0;
  double r_e = 0.11;           // ellipsoid xy semi-axis [m]
  double d_s = 0.005;          // safety margin [m]
  Vec3 p_e0_in_B = Vec3(0.0, 0.0, -0.23);  // initial end-effector pos, body frame

  void validate() const {
    auto req = [](bool ok, const char* msg) {
      if (!ok) throw InvalidScenario(std::string("AmParams: ") + msg);
    };
    req(m_c > m_e && m_e > 0.0, "need m_c > m_e > 0");
    req(f_lo > 0.0 && f_lo < m_c * g && m_c * g < f_hi,
        "need 0 < f_lo < m_c*g < f_hi");
    req((workspace_lo.array() < workspace_hi.array()).all(),
        "workspace bounds inverted");
    req(workspace_hi.z() < 0.0, "workspace must hang below the delta frame");
    req(L_l > L_u && L_u > 0.0, "need L_l > L_u > 0");
    req(r_e > 0.0, "need r_e > 0");
    req(d_s >= 0.0, "need d_s >= 0");
  }
};

/// Attitude, thrust and xy body rates recovered from the flat outputs.
struct AttitudeState {
  Mat3 R_B = Mat3::Identity();
  double thrust = 0.0;  // [N]
  Vec2 omega_xy = Vec2::Zero();
};

}  // namespace ampl

#endif  // AMPL_PARAMS_HPP
