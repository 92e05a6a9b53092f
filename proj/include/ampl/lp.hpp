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

#ifndef AMPL_LP_HPP_
#define AMPL_LP_HPP_

#include <cmath>
#include <limits>
#include <vector>

#include "ampl/common.hpp"

namespace ampl {

// One halfspace n . x <= b. The normal need not be unit length.
struct Halfplane {
  Vec3 n = Vec3::UnitZ();
  double b = 0.0;

  double margin(const Vec3& x) const { return b - n.dot(x); }
};

struct ChebyshevResult {
  bool feasible = false;
  Vec3 center = Vec3::Zero();
  double radius = -std::numeric_limits<double>::infinity();
};

// Largest inscribed ball of the intersection of halfspaces: maximize r
// subject to n_i . x + r ||n_i|| <= b_i and r <= r_cap, inside a large
// implicit domain box so basic solutions always exist. Solved exactly by
// enumerating basic solutions of the 4-variable LP, which is cheap at the
// constraint counts corridors produce. A negative optimal radius certifies
// an empty intersection.
inline ChebyshevResult chebyshev_center(const std::vector<Halfplane>& hs,
                                        double r_cap = 1e3,
                                        double domain = 1e3) {
  // Rows of the 4-D system A [x; r] <= c.
  std::vector<Eigen::Matrix<double, 1, 4>> rows;
  std::vector<double> rhs;
  rows.reserve(hs.size() + 7);
  for (const Halfplane& h : hs) {
    Eigen::Matrix<double, 1, 4> row;
    row << h.n.transpose(), h.n.norm();
    rows.push_back(row);
    rhs.push_back(h.b);
  }
  {
    Eigen::Matrix<double, 1, 4> cap;
    cap << 0, 0, 0, 1;
    rows.push_back(cap);
    rhs.push_back(r_cap);
  }
  for (int k = 0; k < 3; ++k) {
    for (double sign : {1.0, -1.0}) {
      Eigen::Matrix<double, 1, 4> row;
      row << sign * Vec3::Unit(k).transpose(), 1.0;
      rows.push_back(row);
      rhs.push_back(domain);
    }
  }

  const int n = static_cast<int>(rows.size());
  ChebyshevResult best;
  Eigen::Matrix4d a;
  Eigen::Vector4d c;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        for (int l = k + 1; l < n; ++l) {
          a.row(0) = rows[i];
          a.row(1) = rows[j];
          a.row(2) = rows[k];
          a.row(3) = rows[l];
          c << rhs[i], rhs[j], rhs[k], rhs[l];
          const Eigen::FullPivLU<Eigen::Matrix4d> lu(a);
          if (!lu.isInvertible()) continue;
          const Eigen::Vector4d x = lu.solve(c);
          if (!x.allFinite()) continue;
          if (x[3] <= best.radius) continue;
          bool ok = true;
          for (int m = 0; m < n; ++m) {
            if (rows[m].dot(x) > rhs[m] + 1e-9) {
              ok = false;
              break;
            }
          }
          if (ok) {
            best.center = x.head<3>();
            best.radius = x[3];
          }
        }
      }
    }
  }
  best.feasible = std::isfinite(best.radius) && best.radius > 0.0;
  return best;
}

// Strict feasibility of the intersection: a ball of at least `margin` fits.
inline bool intersection_nonempty(const std::vector<Halfplane>& a,
                                  const std::vector<Halfplane>& b,
                                  double margin = 1e-9) {
  std::vector<Halfplane> all = a;
  all.insert(all.end(), b.begin(), b.end());
  const ChebyshevResult r = chebyshev_center(all);
  return r.feasible && r.radius > margin;
}

}  // namespace ampl

#endif  // AMPL_LP_HPP_
