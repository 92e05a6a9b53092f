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

#ifndef AMPL_SPLINE_HPP
#define AMPL_SPLINE_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "ampl/common.hpp"

namespace ampl {

// Integrator order: minimum-jerk quintic segments.
inline constexpr int kS = 3;
inline constexpr int kCoeffs = 2 * kS;  // 6 coefficients per segment

/// Full 6-D state (position/velocity/acceleration) at a trajectory boundary.
/// First 3 dims: quadrotor in world frame; last 3: end-effector in delta frame.
struct BoundaryState {
  Vec6 pos = Vec6::Zero();
  Vec6 vel = Vec6::Zero();
  Vec6 acc = Vec6::Zero();
};

/// Decision variables of the spatio-temporal parameterization.
struct DecisionVars {
  MatX P;                    // (M-1) x 3 quadrotor intermediate points, world
  std::vector<bool> fixed;   // per-row hard-waypoint flag for P
  MatX Q;                    // (M-1) x 3 end-effector points, delta frame
  VecX tau;                  // M unconstrained times, T_i = exp(tau_i)

  int segments() const { return static_cast<int>(tau.size()); }
  VecX durations() const { return tau.array().exp(); }
};

/// Value of the d-th derivative of the monomial basis [1, x, .., x^5].
inline Vec6 basis(double x, int order) {
  Vec6 b = Vec6::Zero();
  for (int k = order; k < kCoeffs; ++k) {
    double c = 1.0;
    for (int j = 0; j < order; ++j) c *= static_cast<double>(k - j);
    b[k] = c * std::pow(x, k - order);
  }
  return b;
}

/// Piecewise quintic polynomial over M segments in 6 dimensions, obtained as
/// the unique minimum-jerk interpolant of the decision variables. Immutable
/// after construction.
class Trajectory6 {
 public:
  Trajectory6(const BoundaryState& start, const BoundaryState& finish,
              const DecisionVars& vars) {
    M_ = vars.segments();
    if (M_ < 1) throw SingularSystem("Trajectory6: need at least one segment");
    T_ = vars.durations();
    if (!(T_.array() > 1e-9).all() || !T_.allFinite()) {
      throw SingularSystem("Trajectory6: non-positive or tiny duration");
    }
    fixed_ = vars.fixed;
    fixed_.resize(M_ - 1, false);

    const int n = kCoeffs * M_;
    MatX a = MatX::Zero(n, n);
    MatX b = MatX::Zero(n, 6);

    for (int d = 0; d < kS; ++d) a.block<1, kCoeffs>(d, 0) = basis(0.0, d).transpose();
    b.row(0) = start.pos.transpose();
    b.row(1) = start.vel.transpose();
    b.row(2) = start.acc.transpose();

    for (int i = 1; i < M_; ++i) {
      const int r = kS + kCoeffs * (i - 1);
      const int ca = kCoeffs * (i - 1);
      const int cb = kCoeffs * i;
      const double t = T_[i - 1];
      a.block<1, kCoeffs>(r, ca) = basis(t, 0).transpose();
      b.row(r).head<3>() = vars.P.row(i - 1);
      b.row(r).tail<3>() = vars.Q.row(i - 1);
      for (int d = 0; d <= 2 * kS - 2; ++d) {
        a.block<1, kCoeffs>(r + 1 + d, ca) = basis(t, d).transpose();
        a.block<1, kCoeffs>(r + 1 + d, cb) -= basis(0.0, d).transpose();
      }
    }

    const int rf = n - kS;
    for (int d = 0; d < kS; ++d) {
      a.block<1, kCoeffs>(rf + d, kCoeffs * (M_ - 1)) =
          basis(T_[M_ - 1], d).transpose();
    }
    b.row(rf) = finish.pos.transpose();
    b.row(rf + 1) = finish.vel.transpose();
    b.row(rf + 2) = finish.acc.transpose();

    lu_.compute(a);
    coeffs_ = lu_.solve(b);
    if (!coeffs_.allFinite()) {
      throw SingularSystem("Trajectory6: ill-conditioned interpolation system");
    }
  }

  int segments() const { return M_; }
  const VecX& durations() const { return T_; }
  double total_time() const { return T_.sum(); }

  /// 6x6 coefficient block of segment i (rows: powers 0..5, cols: dims).
  Eigen::Block<const MatX, kCoeffs, 6> seg_coeffs(int i) const {
    return coeffs_.block<kCoeffs, 6>(kCoeffs * i, 0);
  }
  const MatX& coeffs() const { return coeffs_; }

  /// Evaluate the order-th derivative of segment i at local time t.
  Vec6 eval_segment(int i, double t_local, int order) const {
    return seg_coeffs(i).transpose() * basis(t_local, order);
  }

  /// Global evaluation; right-continuous at segment junctions.
  Vec6 eval(double t, int order) const {
    if (t < -1e-12 || t > total_time() + 1e-12) {
      throw OutOfDomain("Trajectory6::eval: time outside trajectory");
    }
    double rem = std::max(t, 0.0);
    for (int i = 0; i < M_ - 1; ++i) {
      if (rem < T_[i]) return eval_segment(i, rem, order);
      rem -= T_[i];
    }
    return eval_segment(M_ - 1, std::min(rem, T_[M_ - 1]), order);
  }

  /// Start time of segment i.
  double segment_start(int i) const { return T_.head(i).sum(); }

  /// Exact chain rule from coefficient/time gradients back to the decision
  /// variables, via one adjoint solve of the interpolation system.
  void backprop(const MatX& dJ_dC, const VecX& dJ_dT_direct, MatX& dJ_dP,
                MatX& dJ_dQ, VecX& dJ_dtau) const {
    const MatX g = lu_.transpose().solve(dJ_dC);

    dJ_dP = MatX::Zero(M_ - 1, 3);
    dJ_dQ = MatX::Zero(M_ - 1, 3);
    VecX dJ_dT = dJ_dT_direct;
    if (dJ_dT.size() == 0) dJ_dT = VecX::Zero(M_);

    for (int i = 1; i < M_; ++i) {
      const int r = kS + kCoeffs * (i - 1);
      if (!fixed_[i - 1]) dJ_dP.row(i - 1) = g.row(r).head<3>();
      dJ_dQ.row(i - 1) = g.row(r).tail<3>();

      const double t = T_[i - 1];
      const auto ci = seg_coeffs(i - 1);
      dJ_dT[i - 1] -= g.row(r).dot(ci.transpose() * basis(t, 1));
      for (int d = 0; d <= 2 * kS - 2; ++d) {
        dJ_dT[i - 1] -= g.row(r + 1 + d).dot(ci.transpose() * basis(t, d + 1));
      }
    }
    {
      const int rf = kCoeffs * M_ - kS;
      const double t = T_[M_ - 1];
      const auto cm = seg_coeffs(M_ - 1);
      for (int d = 0; d < kS; ++d) {
        dJ_dT[M_ - 1] -= g.row(rf + d).dot(cm.transpose() * basis(t, d + 1));
      }
    }
    dJ_dtau = dJ_dT.cwiseProduct(T_);  // dT/dtau = exp(tau) = T
  }

 private:
  int M_ = 0;
  VecX T_;
  std::vector<bool> fixed_;
  MatX coeffs_;
  Eigen::PartialPivLU<MatX> lu_;
};

}  // namespace ampl

#endif  // AMPL_SPLINE_HPP
