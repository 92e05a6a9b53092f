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

#ifndef AMPL_SOLVER_HPP_
#define AMPL_SOLVER_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ampl/costs.hpp"
#include "ampl/lbfgs.hpp"
#include "ampl/scenario.hpp"

namespace ampl {

// World end-effector position from the flat state at time t.
inline Vec3 ee_world_position(const Trajectory6& traj, double t,
                              const AmParams& p, const Vec3& f_ext) {
  const Vec6 v0 = traj.eval(t, 0);
  const Vec6 v2 = traj.eval(t, 2);
  const AttitudeState att =
      flat_to_attitude(v2.head<3>(), Vec3::Zero(), f_ext, p);
  return att.R_B * (p.p_D_in_B + Vec3(v0.tail<3>())) + Vec3(v0.head<3>());
}

// Assembled problem: initial decision variables plus the cost context.
struct Assembled {
  BoundaryState s0, s1;
  DecisionVars vars;
  CostContext ctx;

  int free_dim() const {
    int n = 0;
    for (bool f : vars.fixed) {
      if (!f) n += 3;
    }
    return n + 3 * static_cast<int>(vars.Q.rows()) +
           static_cast<int>(vars.tau.size());
  }

  VecX pack() const {
    VecX x(free_dim());
    int k = 0;
    for (int i = 0; i < vars.P.rows(); ++i) {
      if (vars.fixed[i]) continue;
      x.segment<3>(k) = vars.P.row(i).transpose();
      k += 3;
    }
    for (int i = 0; i < vars.Q.rows(); ++i) {
      x.segment<3>(k) = vars.Q.row(i).transpose();
      k += 3;
    }
    x.tail(vars.tau.size()) = vars.tau;
    return x;
  }

  void unpack(const VecX& x) {
    int k = 0;
    for (int i = 0; i < vars.P.rows(); ++i) {
      if (vars.fixed[i]) continue;
      vars.P.row(i) = x.segment<3>(k).transpose();
      k += 3;
    }
    for (int i = 0; i < vars.Q.rows(); ++i) {
      vars.Q.row(i) = x.segment<3>(k).transpose();
      k += 3;
    }
    vars.tau = x.tail(vars.tau.size());
  }
};

// Builds the initial decision variables from the corridor: free intermediate
// points at the pairwise Chebyshev centers, quadrotor constraints and guide
// points hard-fixed, end-effector points at the workspace center axis.
inline Assembled assemble(const Scenario& sc, const Corridor& corridor) {
  Assembled as;
  as.s0 = sc.start;
  as.s1 = sc.goal;
  const int m = static_cast<int>(corridor.polys.size());
  if (m < 1) throw CorridorGap("assemble: empty corridor");

  as.vars.P = MatX::Zero(std::max(m - 1, 0), 3);
  as.vars.Q = MatX::Zero(std::max(m - 1, 0), 3);
  as.vars.fixed.assign(std::max(m - 1, 0), false);
  as.vars.tau = VecX::Zero(m);

  const double q_z =
      0.5 * (sc.params.workspace_lo.z() + sc.params.workspace_hi.z());
  for (int j = 0; j + 1 < m; ++j) {
    std::vector<Halfplane> both = corridor.polys[j].halfplanes;
    both.insert(both.end(), corridor.polys[j + 1].halfplanes.begin(),
                corridor.polys[j + 1].halfplanes.end());
    const ChebyshevResult r = chebyshev_center(both);
    if (!r.feasible) {
      throw CorridorGap("assemble: junction intersection empty");
    }
    as.vars.P.row(j) = r.center.transpose();
    as.vars.Q.row(j) = Vec3(0, 0, q_z).transpose();
  }
  for (const auto& [lam, j] : corridor.phi) {
    const WaypointConstraint& c = sc.constraints[lam];
    if (c.kind == WaypointConstraint::Kind::kQuadrotor) {
      as.vars.P.row(j) = c.position.transpose();
      as.vars.fixed[j] = true;
    }
  }

  Vec3 prev = sc.start.pos.head<3>();
  for (int i = 0; i < m; ++i) {
    const Vec3 next = (i < m - 1) ? Vec3(as.vars.P.row(i).transpose())
                                  : Vec3(sc.goal.pos.head<3>());
    const double len = (next - prev).norm();
    as.vars.tau[i] = std::log(std::max(len / (0.7 * sc.params.v_b_max), 0.25));
    prev = next;
  }

  as.ctx.corridor = corridor;
  as.ctx.constraints = sc.constraints;
  as.ctx.params = sc.params;
  as.ctx.weights = sc.weights;
  as.ctx.collision = sc.collision;
  as.ctx.motions = sc.motions;
  for (SegmentMotionConstraint& mc : as.ctx.motions) {
    if (mc.around_constraint >= 0) {
      const auto it = corridor.phi.find(mc.around_constraint);
      if (it != corridor.phi.end()) {
        mc.active_segments = {it->second, it->second + 1};
      }
    }
  }
  return as;
}

inline Objective make_objective(const Assembled& assembled) {
  return [as = assembled](const VecX& x, VecX& g) mutable -> double {
    as.unpack(x);
    g.setZero(x.size());
    try {
      const Trajectory6 traj(as.s0, as.s1, as.vars);
      MatX dp, dq;
      VecX dtau;
      const double j = total_cost(traj, as.ctx, &dp, &dq, &dtau);
      int k = 0;
      for (int i = 0; i < dp.rows(); ++i) {
        if (as.vars.fixed[i]) continue;
        g.segment<3>(k) = dp.row(i).transpose();
        k += 3;
      }
      for (int i = 0; i < dq.rows(); ++i) {
        g.segment<3>(k) = dq.row(i).transpose();
        k += 3;
      }
      g.tail(dtau.size()) = dtau;
      return j;
    } catch (const PlannerError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
}

struct StageStats {
  int iterations = 0;
  double cost = 0.0;
  double grad_norm = 0.0;
  bool converged = false;
};

// Minimizes in place; the assembled variables are updated to the optimum.
inline StageStats run_stage(Assembled& as, const SolveConfig& cfg) {
  const Objective obj = make_objective(as);
  const MinimizeResult r = minimize(obj, as.pack(), cfg);
  as.unpack(r.x);
  StageStats st;
  st.iterations = r.iterations;
  st.cost = r.f;
  st.grad_norm = r.grad.lpNorm<Eigen::Infinity>();
  st.converged = r.converged;
  return st;
}

struct PlanResult {
  BoundaryState s0, s1;
  DecisionVars vars;
  CostContext ctx;
  std::vector<Vec3> path;
  double cost = 0.0;
  CostBreakdown breakdown;
  std::vector<StageStats> stages;
  bool converged = false;
  std::vector<double> waypoint_errors;

  Trajectory6 trajectory() const { return Trajectory6(s0, s1, vars); }
};

namespace detail {

inline void finalize_result(PlanResult& out) {
  const Trajectory6 traj = out.trajectory();
  MatX dp, dq;
  VecX dtau;
  out.cost = total_cost(traj, out.ctx, &dp, &dq, &dtau, &out.breakdown);
  out.waypoint_errors.assign(out.ctx.constraints.size(), 0.0);
  for (const auto& [lam, j] : out.ctx.corridor.phi) {
    const WaypointConstraint& c = out.ctx.constraints[lam];
    const double t = traj.segment_start(j + 1);
    if (c.kind == WaypointConstraint::Kind::kQuadrotor) {
      out.waypoint_errors[lam] =
          (Vec3(traj.eval(t, 0).head<3>()) - c.position).norm();
    } else {
      out.waypoint_errors[lam] =
          (ee_world_position(traj, t, out.ctx.params, out.ctx.weights.f_ext) -
           c.position)
              .norm();
    }
  }
}

}  // namespace detail

struct Prepared {
  OccupancyGrid grid;
  std::vector<Vec3> path;
  Corridor corridor;
  Assembled as;
};

inline Prepared prepare(const Scenario& sc) {
  sc.validate();
  Prepared pre;
  pre.grid = rasterize(sc.world);
  std::vector<Vec3> ordered;
  ordered.push_back(sc.start.pos.head<3>());
  // without active generation the corridor is decomposed along the plain
  // start-goal path and no constraint is pinned to a junction
  if (sc.sfc.active) {
    for (const WaypointConstraint& c : sc.constraints) {
      ordered.push_back(c.path_point(sc.params));
    }
  }
  ordered.push_back(sc.goal.pos.head<3>());
  pre.path = search_path(pre.grid, ordered);
  pre.corridor = build_sfc(pre.path, sc.constraints, pre.grid, sc.params,
                           sc.sfc);
  pre.as = assemble(sc, pre.corridor);
  return pre;
}

// Single-stage whole-body plan.
inline PlanResult plan_basic(const Scenario& sc) {
  Prepared pre = prepare(sc);
  const StageStats st = run_stage(pre.as, sc.solve);
  PlanResult out;
  out.s0 = pre.as.s0;
  out.s1 = pre.as.s1;
  out.vars = pre.as.vars;
  out.ctx = pre.as.ctx;
  out.path = pre.path;
  out.stages = {st};
  out.converged = st.converged;
  detail::finalize_result(out);
  return out;
}

// Sampled kinematic extrema, for reports and feasibility checks.
struct TrajectoryReport {
  double v_b_max = 0.0;
  double v_e_max = 0.0;
  double thrust_min = std::numeric_limits<double>::infinity();
  double thrust_max = 0.0;
  double omega_xy_max = 0.0;
  double h_min = std::numeric_limits<double>::infinity();
  double h_max = 0.0;
};

inline TrajectoryReport report(const Trajectory6& traj, const AmParams& p,
                               const Vec3& f_ext, double dt = 0.01) {
  TrajectoryReport r;
  const double total = traj.total_time();
  for (double t = 0.0; t <= total + 1e-9; t += dt) {
    const double tc = std::min(t, total);
    const Vec6 v0 = traj.eval(tc, 0);
    const Vec6 v1 = traj.eval(tc, 1);
    const Vec6 v2 = traj.eval(tc, 2);
    const Vec6 v3 = traj.eval(tc, 3);
    r.v_b_max = std::max(r.v_b_max, v1.head<3>().norm());
    r.v_e_max = std::max(r.v_e_max, v1.tail<3>().norm());
    const AttitudeState att =
        flat_to_attitude(v2.head<3>(), v3.head<3>(), f_ext, p);
    r.thrust_min = std::min(r.thrust_min, att.thrust);
    r.thrust_max = std::max(r.thrust_max, att.thrust);
    r.omega_xy_max = std::max(r.omega_xy_max, att.omega_xy.norm());
    const double h = ellipsoid_height(v0.tail<3>(), p);
    r.h_min = std::min(r.h_min, h);
    r.h_max = std::max(r.h_max, h);
  }
  return r;
}

}  // namespace ampl

#endif  // AMPL_SOLVER_HPP_
