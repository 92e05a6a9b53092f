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

#include "ampl/spline.hpp"

using namespace ampl;

namespace {

DecisionVars random_vars(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  DecisionVars v;
  v.P = MatX::Zero(m - 1, 3);
  v.Q = MatX::Zero(m - 1, 3);
  v.tau = VecX::Zero(m);
  for (int i = 0; i < m - 1; ++i) {
    for (int k = 0; k < 3; ++k) {
      v.P(i, k) = n(rng);
      v.Q(i, k) = 0.1 * n(rng);
    }
  }
  for (int i = 0; i < m; ++i) v.tau[i] = 0.3 * n(rng);
  v.fixed.assign(m - 1, false);
  return v;
}

BoundaryState random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  BoundaryState s;
  for (int k = 0; k < 6; ++k) {
    s.pos[k] = n(rng);
    s.vel[k] = 0.5 * n(rng);
    s.acc[k] = 0.5 * n(rng);
  }
  return s;
}

double jerk_energy(const Trajectory6& traj, int samples_per_seg = 4000) {
  double total = 0.0;
  for (int i = 0; i < traj.segments(); ++i) {
    const double t = traj.durations()[i];
    const double dt = t / samples_per_seg;
    for (int k = 0; k < samples_per_seg; ++k) {
      total += traj.eval_segment(i, (k + 0.5) * dt, 3).squaredNorm() * dt;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("constant trajectory from coincident points") {
  BoundaryState s;
  s.pos = Vec6::Constant(0.7);
  DecisionVars v;
  v.P = MatX::Constant(2, 3, 0.7);
  v.Q = MatX::Constant(2, 3, 0.7);
  v.tau = VecX::Zero(3);
  v.fixed.assign(2, false);
  const Trajectory6 traj(s, s, v);
  for (int i = 0; i < 3; ++i) {
    const auto c = traj.seg_coeffs(i);
    CHECK(c.bottomRows(5).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((c.row(0).transpose() - Vec6::Constant(0.7)).norm() < 1e-9);
  }
  CHECK(traj.eval(1.23, 1).norm() < 1e-9);
}

TEST_CASE("single-segment min-jerk matches the boundary linear system") {
  BoundaryState s0, s1;
  s1.pos = Vec6::Constant(1.0);
  DecisionVars v;
  v.P = MatX::Zero(0, 3);
  v.Q = MatX::Zero(0, 3);
  v.tau = VecX::Zero(1);
  const Trajectory6 traj(s0, s1, v);

  // independent oracle: solve the 6x6 boundary system directly
  Eigen::Matrix<double, 6, 6> a;
  for (int d = 0; d < 3; ++d) {
    a.row(d) = basis(0.0, d).transpose();
    a.row(3 + d) = basis(1.0, d).transpose();
  }
  Vec6 rhs = Vec6::Zero();
  rhs[3] = 1.0;
  const Vec6 oracle = a.fullPivLu().solve(rhs);
  const Vec6 expect = (Vec6() << 0, 0, 0, 10, -15, 6).finished();
  CHECK((oracle - expect).norm() < 1e-10);
  for (int dim = 0; dim < 6; ++dim) {
    CHECK((traj.seg_coeffs(0).col(dim) - oracle).cwiseAbs().maxCoeff() <
          1e-10);
  }
  CHECK(traj.eval(0.5, 0)[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(traj.eval(0.5, 1)[0] == doctest::Approx(1.875).epsilon(1e-12));
}

TEST_CASE("random instances satisfy interpolation and C4 continuity") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 5);
    const BoundaryState s0 = random_state(rng);
    const BoundaryState s1 = random_state(rng);
    const DecisionVars v = random_vars(m, rng);
    const Trajectory6 traj(s0, s1, v);

    CHECK((traj.eval_segment(0, 0.0, 0) - s0.pos).norm() < 1e-9);
    CHECK((traj.eval_segment(0, 0.0, 1) - s0.vel).norm() < 1e-9);
    CHECK((traj.eval_segment(0, 0.0, 2) - s0.acc).norm() < 1e-9);
    const double tm = traj.durations()[m - 1];
    CHECK((traj.eval_segment(m - 1, tm, 0) - s1.pos).norm() < 1e-9);

    for (int i = 0; i + 1 < m; ++i) {
      const double t = traj.durations()[i];
      Vec6 wp;
      wp.head<3>() = v.P.row(i);
      wp.tail<3>() = v.Q.row(i);
      CHECK((traj.eval_segment(i, t, 0) - wp).norm() < 1e-10);
      for (int d = 0; d <= 4; ++d) {
        const Vec6 left = traj.eval_segment(i, t, d);
        const Vec6 right = traj.eval_segment(i + 1, 0.0, d);
        CHECK((left - right).norm() <
              1e-8 * std::max(1.0, left.norm()));
      }
    }
  }
}

TEST_CASE("construct rejects tiny durations") {
  BoundaryState s;
  DecisionVars v;
  v.P = MatX::Zero(0, 3);
  v.Q = MatX::Zero(0, 3);
  v.tau = VecX::Constant(1, -30.0);  // T = e^-30 < 1e-9
  CHECK_THROWS_AS(Trajectory6(s, s, v), SingularSystem);
}

TEST_CASE("minimum control effort against perturbed interpolants") {
  std::mt19937_64 rng(9);
  const BoundaryState s0 = random_state(rng);
  const BoundaryState s1 = random_state(rng);
  const DecisionVars v = random_vars(4, rng);
  const Trajectory6 traj(s0, s1, v);
  const double base = jerk_energy(traj);

  // Splitting segment 1 at its midpoint and pinning the new knot to a
  // perturbed value constrains the same variational problem, so the optimal
  // energy can only go up; unperturbed it reproduces the original optimum.
  std::normal_distribution<double> n(0.0, 0.05);
  const VecX t = v.durations();
  const Vec6 mid = traj.eval_segment(1, t[1] / 2.0, 0);
  for (int trial = 0; trial < 6; ++trial) {
    Vec6 knot = mid;
    if (trial > 0) {
      for (int k = 0; k < 6; ++k) knot[k] += n(rng);
    }
    DecisionVars vs;
    vs.P = MatX::Zero(4, 3);
    vs.Q = MatX::Zero(4, 3);
    vs.tau = VecX::Zero(5);
    vs.tau << v.tau[0], std::log(t[1] / 2.0), std::log(t[1] / 2.0), v.tau[2],
        v.tau[3];
    vs.P.row(0) = v.P.row(0);
    vs.Q.row(0) = v.Q.row(0);
    vs.P.row(1) = knot.head<3>().transpose();
    vs.Q.row(1) = knot.tail<3>().transpose();
    vs.P.row(2) = v.P.row(1);
    vs.Q.row(2) = v.Q.row(1);
    vs.P.row(3) = v.P.row(2);
    vs.Q.row(3) = v.Q.row(2);
    vs.fixed.assign(4, false);
    const Trajectory6 perturbed(s0, s1, vs);
    const double e = jerk_energy(perturbed);
    if (trial == 0) {
      CHECK(e == doctest::Approx(base).epsilon(1e-6));
    } else {
      CHECK(e > base - 1e-9);
    }
  }
}

TEST_CASE("time scaling reduces jerk energy by 2^-5") {
  std::mt19937_64 rng(123);
  const BoundaryState zero;
  BoundaryState s0 = zero, s1 = zero;
  s0.pos.setZero();
  s1.pos = Vec6::Constant(1.0);
  DecisionVars v = random_vars(3, rng);
  v.P = MatX::Random(2, 3);
  v.Q = 0.1 * MatX::Random(2, 3);
  const Trajectory6 t1(s0, s1, v);
  DecisionVars v2 = v;
  v2.tau = v.tau.array() + std::log(2.0);
  const Trajectory6 t2(s0, s1, v2);
  const double e1 = jerk_energy(t1);
  const double e2 = jerk_energy(t2);
  CHECK(e2 / e1 == doctest::Approx(std::pow(2.0, -5)).epsilon(1e-6));
}

TEST_CASE("backprop matches finite differences for a position cost") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 3);
    const BoundaryState s0 = random_state(rng);
    const BoundaryState s1 = random_state(rng);
    DecisionVars v = random_vars(m, rng);

    const Vec6 target = Vec6::Constant(0.3);
    const int seg = 1;
    const double frac = 0.37;

    auto cost_and_grads = [&](const DecisionVars& vars, MatX* dp, MatX* dq,
                              VecX* dtau) {
      const Trajectory6 traj(s0, s1, vars);
      const double tloc = frac * traj.durations()[seg];
      const Vec6 err = traj.eval_segment(seg, tloc, 0) - target;
      const double cost = err.squaredNorm();
      if (dp != nullptr) {
        MatX djdc = MatX::Zero(kCoeffs * m, 6);
        const Vec6 beta = basis(tloc, 0);
        djdc.block<kCoeffs, 6>(kCoeffs * seg, 0) =
            beta * (2.0 * err).transpose();
        // local time depends on T_seg through the fixed fraction
        VecX dtdir = VecX::Zero(m);
        dtdir[seg] =
            (2.0 * err).dot(traj.eval_segment(seg, tloc, 1)) * frac;
        traj.backprop(djdc, dtdir, *dp, *dq, *dtau);
      }
      return cost;
    };

    MatX dp, dq;
    VecX dtau;
    cost_and_grads(v, &dp, &dq, &dtau);

    const double h = 1e-6;
    for (int i = 0; i < m - 1; ++i) {
      for (int k = 0; k < 3; ++k) {
        DecisionVars vp = v, vm = v;
        vp.P(i, k) += h;
        vm.P(i, k) -= h;
        const double fd = (cost_and_grads(vp, nullptr, nullptr, nullptr) -
                           cost_and_grads(vm, nullptr, nullptr, nullptr)) /
                          (2 * h);
        CHECK(dp(i, k) ==
              doctest::Approx(fd).epsilon(1e-5).scale(1.0));
        vp = v;
        vm = v;
        vp.Q(i, k) += h;
        vm.Q(i, k) -= h;
        const double fdq = (cost_and_grads(vp, nullptr, nullptr, nullptr) -
                            cost_and_grads(vm, nullptr, nullptr, nullptr)) /
                           (2 * h);
        CHECK(dq(i, k) ==
              doctest::Approx(fdq).epsilon(1e-5).scale(1.0));
      }
    }
    for (int i = 0; i < m; ++i) {
      DecisionVars vp = v, vm = v;
      vp.tau[i] += h;
      vm.tau[i] -= h;
      const double fd = (cost_and_grads(vp, nullptr, nullptr, nullptr) -
                         cost_and_grads(vm, nullptr, nullptr, nullptr)) /
                        (2 * h);
      CHECK(dtau[i] == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("structural zero gradients") {
  std::mt19937_64 rng(31);
  const int m = 4;
  const BoundaryState s0 = random_state(rng);
  const BoundaryState s1 = random_state(rng);
  DecisionVars v = random_vars(m, rng);
  v.fixed = {false, true, false};
  const Trajectory6 traj(s0, s1, v);

  // cost touching only the quadrotor dims
  MatX djdc = MatX::Zero(kCoeffs * m, 6);
  djdc.block(0, 0, kCoeffs * m, 3).setRandom();
  MatX dp, dq;
  VecX dtau;
  traj.backprop(djdc, VecX::Zero(m), dp, dq, dtau);
  CHECK(dq.cwiseAbs().maxCoeff() == 0.0);
  CHECK(dp.row(1).cwiseAbs().maxCoeff() == 0.0);  // fixed row stays zero
  CHECK(dp.row(0).cwiseAbs().maxCoeff() > 0.0);
}
