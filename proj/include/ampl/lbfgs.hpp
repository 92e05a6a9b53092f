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

#ifndef AMPL_LBFGS_HPP_
#define AMPL_LBFGS_HPP_

#include <cmath>
#include <deque>
#include <functional>
#include <limits>

#include "ampl/common.hpp"

namespace ampl {

struct SolveConfig {
  double eps_grad = 1e-5;
  bool relative = false;  // threshold eps_grad * (1 + |f|)
  int max_iters = 3000;
  int memory = 8;
  double c_decrease = 1e-4;  // weak-Wolfe sufficient decrease
  double c_curvature = 0.9;
  int max_linesearch = 60;
  // stop when the relative cost decrease stays below this for a run of
  // consecutive accepted steps (penalty creases can pin the gradient)
  double eps_stagnation = 1e-10;
  int stagnation_window = 25;
};

struct MinimizeResult {
  VecX x;
  double f = 0.0;
  VecX grad;
  int iterations = 0;
  bool converged = false;  // gradient tolerance met
  bool stagnated = false;  // stopped on vanishing cost progress
  bool line_search_failed = false;
};

// Objective returns f and fills grad; may return +inf outside its domain.
using Objective = std::function<double(const VecX&, VecX&)>;

// Limited-memory BFGS with a bisection weak-Wolfe line search.
inline MinimizeResult minimize(const Objective& obj, const VecX& x0,
                               const SolveConfig& cfg) {
  MinimizeResult out;
  out.x = x0;
  VecX g(x0.size());
  out.f = obj(out.x, g);
  if (!std::isfinite(out.f) || !g.allFinite()) {
    throw NonFiniteObjective("minimize: objective not finite at x0");
  }
  out.grad = g;

  auto tol = [&](double f) {
    return cfg.relative ? cfg.eps_grad * (1.0 + std::abs(f)) : cfg.eps_grad;
  };
  if (g.lpNorm<Eigen::Infinity>() <= tol(out.f)) {
    out.converged = true;
    return out;
  }

  std::deque<VecX> s_hist, y_hist;
  VecX x = out.x;
  double f = out.f;
  int stalled = 0;

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    // two-loop recursion
    VecX q = g;
    std::vector<double> alpha(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      const double rho = 1.0 / y_hist[i].dot(s_hist[i]);
      alpha[i] = rho * s_hist[i].dot(q);
      q -= alpha[i] * y_hist[i];
    }
    if (!s_hist.empty()) {
      const double gamma =
          s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
      q *= gamma;
    }
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double rho = 1.0 / y_hist[i].dot(s_hist[i]);
      const double beta = rho * y_hist[i].dot(q);
      q += (alpha[i] - beta) * s_hist[i];
    }
    VecX d = -q;
    double gd = g.dot(d);
    if (gd >= 0.0) {  // fall back to steepest descent
      d = -g;
      gd = -g.squaredNorm();
    }

    // weak-Wolfe bisection
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double t = iter == 0 ? std::min(1.0, 1.0 / g.lpNorm<1>()) : 1.0;
    VecX xt, gt(x.size());
    double ft = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < cfg.max_linesearch; ++ls) {
      xt = x + t * d;
      ft = obj(xt, gt);
      if (!std::isfinite(ft) || !gt.allFinite() ||
          ft > f + cfg.c_decrease * t * gd) {
        hi = t;
      } else if (gt.dot(d) < cfg.c_curvature * gd) {
        lo = t;
      } else {
        accepted = true;
        break;
      }
      t = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * t;
    }
    if (!accepted) {
      // keep the best finite iterate seen during bisection
      if (std::isfinite(ft) && ft < f && gt.allFinite()) {
        x = xt;
        f = ft;
        g = gt;
      }
      out.line_search_failed = true;
      break;
    }

    const VecX s = xt - x;
    const VecX y = gt - g;
    const double df = f - ft;
    x = xt;
    f = ft;
    g = gt;
    out.iterations = iter + 1;

    if (g.lpNorm<Eigen::Infinity>() <= tol(f)) {
      out.converged = true;
      break;
    }
    stalled = df <= cfg.eps_stagnation * (1.0 + std::abs(f)) ? stalled + 1 : 0;
    if (stalled >= cfg.stagnation_window) {
      out.stagnated = true;
      break;
    }
    if (y.dot(s) > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      if (static_cast<int>(s_hist.size()) > cfg.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
      }
    }
  }

  out.x = x;
  out.f = f;
  out.grad = g;
  return out;
}

}  // namespace ampl

#endif  // AMPL_LBFGS_HPP_
