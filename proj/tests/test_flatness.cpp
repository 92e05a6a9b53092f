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

#include "ampl/flatness.hpp"

using namespace ampl;

TEST_CASE("flat_to_attitude hover identity") {
  AmParams p;
  p.m_c = 1.5;
  p.g = 9.81;
  const AttitudeState s =
      flat_to_attitude(Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), p);
  CHECK(s.thrust == doctest::Approx(14.715).epsilon(1e-12));
  CHECK((s.R_B - Mat3::Identity()).norm() < 1e-12);
  CHECK(s.omega_xy.norm() < 1e-12);
}

TEST_CASE("flat_to_attitude 45 degree tilt") {
  AmParams p;
  const AttitudeState s = flat_to_attitude(Vec3(p.g, 0, 0), Vec3::Zero(),
                                           Vec3::Zero(), p);
  const Vec3 z_b = s.R_B.col(2);
  CHECK((z_b - Vec3(1, 0, 1).normalized()).norm() < 1e-12);
  CHECK(s.thrust == doctest::Approx(p.m_c * p.g * std::sqrt(2.0)));
}

TEST_CASE("flat_to_attitude orthonormality and error paths") {
  AmParams p;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const Vec3 a(n(rng), n(rng), n(rng));
    const Vec3 j(n(rng), n(rng), n(rng));
    AttitudeState s;
    try {
      s = flat_to_attitude(a, j, Vec3(0.1, 0.0, 0.0), p);
    } catch (const PlannerError&) {
      continue;
    }
    CHECK((s.R_B.transpose() * s.R_B - Mat3::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-9);
    CHECK(s.R_B.determinant() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.thrust > 0.0);
  }
  CHECK_THROWS_AS(
      flat_to_attitude(Vec3(0, 0, -p.g), Vec3::Zero(), Vec3::Zero(), p),
      DegenerateThrust);
  // thrust along world x: z_B parallel to e1
  CHECK_THROWS_AS(flat_to_attitude(Vec3(1000.0, 0, -p.g), Vec3::Zero(),
                                   Vec3::Zero(), p),
                  GimbalDegenerate);
}

TEST_CASE("body rates match finite differences of z_B along a quintic") {
  AmParams p;
  // synthetic quintic position per axis; acc and jerk follow analytically
  const Eigen::Matrix<double, 3, 6> c =
      (Eigen::Matrix<double, 3, 6>() << 0.1, 0.4, -0.2, 0.3, -0.05, 0.01,
       -0.3, 0.2, 0.5, -0.1, 0.02, -0.01,
       0.2, -0.1, 0.3, 0.2, -0.03, 0.005)
          .finished();
  auto acc = [&](double t) {
    Vec3 a = Vec3::Zero();
    for (int k = 2; k < 6; ++k)
      a += c.col(k) * (k * (k - 1) * std::pow(t, k - 2));
    return a;
  };
  auto jerk = [&](double t) {
    Vec3 j = Vec3::Zero();
    for (int k = 3; k < 6; ++k)
      j += c.col(k) * (k * (k - 1) * (k - 2) * std::pow(t, k - 3));
    return j;
  };
  const Vec3 f_ext(0.2, -0.1, 0.3);
  const double h = 1e-6;
  for (double t = 0.1; t < 1.0; t += 0.1) {
    const AttitudeState s = flat_to_attitude(acc(t), jerk(t), f_ext, p);
    const AttitudeState sp =
        flat_to_attitude(acc(t + h), jerk(t + h), f_ext, p);
    const AttitudeState sm =
        flat_to_attitude(acc(t - h), jerk(t - h), f_ext, p);
    const Vec3 zdot_fd = (sp.R_B.col(2) - sm.R_B.col(2)) / (2.0 * h);
    // zdot = omega_y * x_B - omega_x * y_B
    const Vec3 zdot_an =
        s.omega_xy[1] * s.R_B.col(0) - s.omega_xy[0] * s.R_B.col(1);
    CHECK((zdot_fd - zdot_an).norm() < 1e-5);
  }
}

TEST_CASE("ellipsoid_height formula and clamp") {
  AmParams p;
  p.p_B_in_D = Vec3(0, 0, 0.10);
  p.r_e = 0.11;
  CHECK(ellipsoid_height(Vec3(0, 0, -0.20), p) ==
        doctest::Approx(0.30).epsilon(1e-12));
  CHECK(ellipsoid_height(Vec3(0, 0, 0.10 - p.r_e + 0.01), p) ==
        doctest::Approx(p.r_e));
  // affine with slope -1 off the clamp
  const double h1 = ellipsoid_height(Vec3(0.03, -0.02, -0.20), p);
  const double h2 = ellipsoid_height(Vec3(0.03, -0.02, -0.25), p);
  CHECK(h2 - h1 == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("ellipsoid_support axis-aligned cases") {
  CHECK((ellipsoid_support(Mat3::Identity(), Vec3(0.3, 0.3, 0.3),
                           Vec3::UnitZ(), Vec3::Zero()) -
         Vec3(0, 0, 0.3))
            .norm() < 1e-12);
  CHECK((ellipsoid_support(Mat3::Identity(), Vec3(0.3, 0.3, 0.5),
                           Vec3::UnitX(), Vec3::Zero()) -
         Vec3(0.3, 0, 0))
            .norm() < 1e-12);
}

TEST_CASE("ellipsoid_support dominates dense surface sampling") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> ug(0.05, 0.6);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Quaterniond quat =
        Eigen::Quaterniond(n(rng), n(rng), n(rng), n(rng)).normalized();
    const Mat3 rot = quat.toRotationMatrix();
    const Vec3 g(ug(rng), ug(rng), ug(rng));
    const Vec3 nh = Vec3(n(rng), n(rng), n(rng)).normalized();
    const Vec3 pb(n(rng), n(rng), n(rng));
    const Vec3 support = ellipsoid_support(rot, g, nh, pb);
    const double val = support.dot(nh);

    // sign condition holds exactly
    const Vec3 body = rot.transpose() * (support - pb);
    CHECK(body.dot(rot.transpose() * nh) >= 0.0);

    double best = -1e100;
    const int ns = 100000;
    for (int i = 0; i < ns; ++i) {
      // Fibonacci sphere mapped through G then R
      const double z = 1.0 - 2.0 * (i + 0.5) / ns;
      const double phi = 2.399963229728653 * i;
      const double r = std::sqrt(1.0 - z * z);
      const Vec3 xi(r * std::cos(phi), r * std::sin(phi), z);
      const Vec3 pt = rot * g.cwiseProduct(xi) + pb;
      best = std::max(best, pt.dot(nh));
    }
    CHECK(val >= best - 1e-3);
  }
}

TEST_CASE("dynamics diagnostics") {
  AmParams p;
  p.p_e0_in_B = Vec3(0, 0, -0.23);
  {
    const auto [fe, te, ic] = dynamics_diagnostics(
        Mat3::Identity(), p.p_e0_in_B, Vec3::Zero(), p);
    CHECK(fe.norm() < 1e-12);
    CHECK(te.norm() < 1e-12);
    CHECK((ic - Mat3(p.inertia_diag.asDiagonal())).norm() < 1e-12);
  }
  {
    const Vec3 pe(0.1, 0.0, -0.2);
    const Vec3 fext(0, 0, -1);
    const auto [fe, te, ic] =
        dynamics_diagnostics(Mat3::Identity(), pe, fext, p);
    const Vec3 expect = pe.cross(fext) +
                        (pe - p.p_e0_in_B)
                            .cross(Vec3(0, 0, p.m_e * p.g));
    CHECK((te - expect).norm() < 1e-12);
    CHECK((fe - fext).norm() < 1e-12);
  }
  {
    // I_c grows monotonically in the offset magnitude per component
    auto icom = [&](double dx) {
      const auto [fe, te, ic] = dynamics_diagnostics(
          Mat3::Identity(), p.p_e0_in_B + Vec3(dx, 0, 0), Vec3::Zero(), p);
      return ic(0, 0);
    };
    CHECK(icom(0.05) < icom(0.10));
    CHECK(icom(0.10) < icom(0.15));
  }
}
