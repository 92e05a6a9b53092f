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

#ifndef AMPL_PRIOR_HPP_
#define AMPL_PRIOR_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "ampl/presets.hpp"
#include "ampl/solver.hpp"

namespace ampl {

using Vec15 = Eigen::Matrix<double, 15, 1>;

// Task observation: quadrotor start position relative to the surface center
// in the horizontal plane plus the surface inclination.
struct Observation {
  Vec2 p_rel_xy = Vec2::Zero();
  double theta_inc = 0.0;  // [0, pi/2)

  Vec3 vec() const { return Vec3(p_rel_xy.x(), p_rel_xy.y(), theta_inc); }
};

// Local trajectory tendency around the task point: one quintic per axis with
// zero constant term, over normalized time tau in [-1, 1] (±1 s).
struct ActionCoeffs {
  // layout [cx1..cx5, cy1..cy5, cz1..cz5], index m holds the tau^(m+1) term
  Vec15 c = Vec15::Zero();

  Vec3 eval(double tau) const {
    Vec3 out = Vec3::Zero();
    double tp = 1.0;
    for (int m = 0; m < 5; ++m) {
      tp *= tau;
      out += tp * Vec3(c[m], c[5 + m], c[10 + m]);
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Denoising diffusion model.

struct DiffusionSchedule {
  VecX beta, alpha, alpha_bar;

  int steps() const { return static_cast<int>(beta.size()); }

  // b_hi is scaled for the short 50-step schedule so that alpha_bar at the
  // final step drops below 0.05 and a^K is close to a standard Gaussian
  static DiffusionSchedule linear(int k = 50, double b_lo = 1e-4,
                                  double b_hi = 0.12) {
    DiffusionSchedule s;
    s.beta = VecX::LinSpaced(k, b_lo, b_hi);
    s.alpha = VecX::Ones(k) - s.beta;
    s.alpha_bar = VecX::Ones(k);
    double prod = 1.0;
    for (int i = 0; i < k; ++i) {
      prod *= s.alpha[i];
      s.alpha_bar[i] = prod;
    }
    return s;
  }
};

// Sinusoidal embedding of the (integer) diffusion step.
inline VecX step_embedding(int k, int dim = 16) {
  VecX e(dim);
  for (int i = 0; i < dim / 2; ++i) {
    const double w = std::pow(10000.0, -2.0 * i / dim);
    e[2 * i] = std::sin(k * w);
    e[2 * i + 1] = std::cos(k * w);
  }
  return e;
}

// Small dense network: [action 15 | step embedding 16 | observation 3] ->
// 64 -> 64 -> 15, tanh hidden activations.
struct Mlp {
  static constexpr int kEmbed = 16;
  static constexpr int kIn = 15 + kEmbed + 3;
  static constexpr int kHidden = 64;
  static constexpr int kOut = 15;

  MatX w1, w2, w3;
  VecX b1, b2, b3;

  bool initialized() const { return w1.size() > 0; }

  void init(std::mt19937_64& rng) {
    auto fill = [&rng](MatX& w, int rows, int cols) {
      const double s = std::sqrt(6.0 / (rows + cols));
      std::uniform_real_distribution<double> u(-s, s);
      w.resize(rows, cols);
      for (int i = 0; i < w.size(); ++i) w.data()[i] = u(rng);
    };
    fill(w1, kHidden, kIn);
    fill(w2, kHidden, kHidden);
    fill(w3, kOut, kHidden);
    b1 = VecX::Zero(kHidden);
    b2 = VecX::Zero(kHidden);
    b3 = VecX::Zero(kOut);
  }

  Vec15 forward(const VecX& in) const {
    const VecX h1 = (w1 * in + b1).array().tanh();
    const VecX h2 = (w2 * h1 + b2).array().tanh();
    return w3 * h2 + b3;
  }

  int num_params() const {
    return static_cast<int>(w1.size() + w2.size() + w3.size() + b1.size() +
                            b2.size() + b3.size());
  }

  VecX params() const {
    VecX p(num_params());
    int k = 0;
    for (const MatX* w : {&w1, &w2, &w3}) {
      p.segment(k, w->size()) = Eigen::Map<const VecX>(w->data(), w->size());
      k += static_cast<int>(w->size());
    }
    for (const VecX* b : {&b1, &b2, &b3}) {
      p.segment(k, b->size()) = *b;
      k += static_cast<int>(b->size());
    }
    return p;
  }

  void set_params(const VecX& p) {
    if (!initialized()) {
      w1.resize(kHidden, kIn);
      w2.resize(kHidden, kHidden);
      w3.resize(kOut, kHidden);
      b1.resize(kHidden);
      b2.resize(kHidden);
      b3.resize(kOut);
    }
    int k = 0;
    for (MatX* w : {&w1, &w2, &w3}) {
      Eigen::Map<VecX>(w->data(), w->size()) = p.segment(k, w->size());
      k += static_cast<int>(w->size());
    }
    for (VecX* b : {&b1, &b2, &b3}) {
      *b = p.segment(k, b->size());
      k += static_cast<int>(b->size());
    }
  }
};

// Predicts the forward noise from (noisy action, step, observation).
using DenoiserFn = std::function<Vec15(const Vec15&, int, const Observation&)>;

struct DiffusionModel {
  DiffusionSchedule sched = DiffusionSchedule::linear();
  Mlp net;
  // When set, replaces the network (test harness hook).
  DenoiserFn denoiser_override;

  Vec15 denoise(const Vec15& a, int k, const Observation& o) const {
    if (denoiser_override) return denoiser_override(a, k, o);
    VecX in(Mlp::kIn);
    in << a, step_embedding(k, Mlp::kEmbed), o.vec();
    return net.forward(in);
  }
};

// a^k = sqrt(abar_k) a0 + sqrt(1 - abar_k) eps, k in 1..K.
inline Vec15 ddpm_forward(const ActionCoeffs& a0, int k, const Vec15& eps,
                          const DiffusionModel& m) {
  const double ab = m.sched.alpha_bar[k - 1];
  return std::sqrt(ab) * a0.c + std::sqrt(1.0 - ab) * eps;
}

// One reverse step; pass z = 0 for the deterministic part.
inline Vec15 ddpm_reverse_step(const DiffusionModel& m, const Vec15& a_k,
                               int k, const Observation& o, const Vec15& z) {
  const double beta = m.sched.beta[k - 1];
  const double alpha = m.sched.alpha[k - 1];
  const double ab = m.sched.alpha_bar[k - 1];
  const Vec15 eps_hat = m.denoise(a_k, k, o);
  return (a_k - beta / std::sqrt(1.0 - ab) * eps_hat) / std::sqrt(alpha) +
         std::sqrt(beta) * z;
}

inline ActionCoeffs ddpm_sample(const DiffusionModel& m, const Observation& o,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&] {
    Vec15 v;
    for (int i = 0; i < 15; ++i) v[i] = gauss(rng);
    return v;
  };
  Vec15 a = draw();
  for (int k = m.sched.steps(); k >= 1; --k) {
    const Vec15 z = k > 1 ? draw() : Vec15(Vec15::Zero());
    a = ddpm_reverse_step(m, a, k, o, z);
  }
  ActionCoeffs out;
  out.c = a;
  return out;
}

struct DemoRecord {
  Observation obs;
  ActionCoeffs coeffs;
  double cost = 0.0;
  double fit_rms = 0.0;
};

using Dataset = std::vector<DemoRecord>;

// Noise-prediction training: Adam on E ||eps - f(a^k, k, o)||^2 with k and
// eps drawn fresh per visit. Returns the per-epoch mean loss.
inline std::vector<double> ddpm_train(const Dataset& data, DiffusionModel& m,
                                      int epochs, std::uint64_t seed) {
  if (data.empty()) throw NonFiniteLoss("ddpm_train: empty dataset");
  std::mt19937_64 rng(seed);
  if (!m.net.initialized()) m.net.init(rng);

  const int np = m.net.num_params();
  VecX theta = m.net.params();
  VecX adam_m = VecX::Zero(np), adam_v = VecX::Zero(np);
  const double lr0 = 1e-3, beta1 = 0.9, beta2 = 0.999, eps_div = 1e-8;
  long step = 0;
  const long total_steps = static_cast<long>(epochs) * data.size();

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> pick_k(1, m.sched.steps());
  std::vector<int> order(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) order[i] = static_cast<int>(i);

  std::vector<double> curve;
  curve.reserve(epochs);
  for (int ep = 0; ep < epochs; ++ep) {
    std::shuffle(order.begin(), order.end(), rng);
    double acc = 0.0;
    for (int idx : order) {
      const DemoRecord& rec = data[idx];
      const int k = pick_k(rng);
      Vec15 eps;
      for (int i = 0; i < 15; ++i) eps[i] = gauss(rng);
      const Vec15 a_k = ddpm_forward(rec.coeffs, k, eps, m);

      VecX in(Mlp::kIn);
      in << a_k, step_embedding(k, Mlp::kEmbed), rec.obs.vec();
      const VecX h1 = (m.net.w1 * in + m.net.b1).array().tanh();
      const VecX h2 = (m.net.w2 * h1 + m.net.b2).array().tanh();
      const VecX out = m.net.w3 * h2 + m.net.b3;
      const VecX r = out - eps;
      const double loss = r.squaredNorm();
      if (!std::isfinite(loss)) throw NonFiniteLoss("ddpm_train");
      acc += loss;

      const VecX d_out = 2.0 * r;
      const VecX d_h2 =
          (m.net.w3.transpose() * d_out).array() * (1.0 - h2.array().square());
      const VecX d_h1 =
          (m.net.w2.transpose() * d_h2).array() * (1.0 - h1.array().square());

      VecX grad(np);
      int gk = 0;
      auto put_mat = [&grad, &gk](const VecX& d, const VecX& x, int rows,
                                  int cols) {
        Eigen::Map<MatX>(grad.data() + gk, rows, cols) = d * x.transpose();
        gk += rows * cols;
      };
      put_mat(d_h1, in, Mlp::kHidden, Mlp::kIn);
      put_mat(d_h2, h1, Mlp::kHidden, Mlp::kHidden);
      put_mat(d_out, h2, Mlp::kOut, Mlp::kHidden);
      grad.segment(gk, d_h1.size()) = d_h1;
      gk += static_cast<int>(d_h1.size());
      grad.segment(gk, d_h2.size()) = d_h2;
      gk += static_cast<int>(d_h2.size());
      grad.segment(gk, d_out.size()) = d_out;

      ++step;
      // cosine decay sharpens the memorization fixed point considerably
      const double lr =
          lr0 * 0.5 *
          (1.0 + std::cos(kPi * static_cast<double>(step) / total_steps));
      adam_m = beta1 * adam_m + (1.0 - beta1) * grad;
      adam_v =
          beta2 * adam_v.array() + (1.0 - beta2) * grad.array().square();
      const double bc1 = 1.0 - std::pow(beta1, step);
      const double bc2 = 1.0 - std::pow(beta2, step);
      theta.array() -= lr * (adam_m.array() / bc1) /
                       ((adam_v.array() / bc2).sqrt() + eps_div);
      m.net.set_params(theta);
    }
    curve.push_back(acc / static_cast<double>(data.size()));
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Guide points and the two-stage plan.

inline std::vector<double> guide_times(int k_guide) {
  switch (k_guide) {
    case 2:
      return {-0.5, 0.5};
    case 4:
      return {-0.75, -0.35, 0.35, 0.75};
    case 6:
      return {-0.85, -0.55, -0.25, 0.25, 0.55, 0.85};
    default:
      throw InvalidScenario("guide_times: k_guide must be 2, 4 or 6");
  }
}

inline std::vector<WaypointConstraint> sample_guide_points(
    const ActionCoeffs& coeffs, const Vec3& task_point, int k_guide) {
  std::vector<WaypointConstraint> out;
  for (double tau : guide_times(k_guide)) {
    WaypointConstraint c;
    c.kind = WaypointConstraint::Kind::kQuadrotor;
    c.position = task_point + coeffs.eval(tau);
    c.guide = true;
    out.push_back(c);
  }
  return out;
}

struct TwoStageConfig {
  int k_guide = 2;
  double eps_loose = 1e-2;   // relative, stage 1
  double eps_strict = 1e-5;  // relative, stage 2
};

// Stage 1 fixes the guide points next to the task waypoint; stage 2 releases
// them (warm-started) and polishes to the strict tolerance. The stage-1
// corridor is reused.
inline PlanResult plan_guided(const Scenario& base,
                              std::vector<WaypointConstraint> guides,
                              const TwoStageConfig& tcfg = {}) {
  if (base.constraints.size() != 1) {
    throw InvalidScenario("plan_guided: expected exactly one task constraint");
  }
  Scenario sc = base;
  // drop guides the grid cannot host
  {
    const OccupancyGrid grid = rasterize(sc.world);
    std::vector<WaypointConstraint> kept;
    for (const WaypointConstraint& g : guides) {
      if (sc.world.bounds.contains(g.position) &&
          !grid.occupied_point(g.position)) {
        kept.push_back(g);
      }
    }
    guides = std::move(kept);
  }
  const int pre = static_cast<int>(guides.size()) / 2;
  std::vector<WaypointConstraint> cs(guides.begin(), guides.begin() + pre);
  cs.push_back(base.constraints[0]);
  cs.insert(cs.end(), guides.begin() + pre, guides.end());
  sc.constraints = cs;

  Prepared prep = prepare(sc);
  SolveConfig loose = sc.solve;
  loose.eps_grad = tcfg.eps_loose;
  loose.relative = true;
  const StageStats st1 = run_stage(prep.as, loose);

  for (const auto& [lam, j] : prep.as.ctx.corridor.phi) {
    if (sc.constraints[lam].guide) prep.as.vars.fixed[j] = false;
  }
  SolveConfig strict = sc.solve;
  strict.eps_grad = tcfg.eps_strict;
  strict.relative = true;
  const StageStats st2 = run_stage(prep.as, strict);

  PlanResult out;
  out.s0 = prep.as.s0;
  out.s1 = prep.as.s1;
  out.vars = prep.as.vars;
  out.ctx = prep.as.ctx;
  out.path = prep.path;
  out.stages = {st1, st2};
  out.converged = st2.converged;
  detail::finalize_result(out);
  return out;
}

inline const DemoRecord& nearest_demo(const Dataset& ds,
                                      const Observation& o) {
  if (ds.empty()) throw InvalidScenario("nearest_demo: empty dataset");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double d = (ds[i].obs.vec() - o.vec()).norm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return ds[best];
}

// Trajectory-tendency source: either a trained diffusion model or a raw
// dataset queried by nearest-observation retrieval.
struct GuidePrior {
  const DiffusionModel* model = nullptr;
  const Dataset* fallback = nullptr;

  ActionCoeffs propose(const Observation& o, std::uint64_t seed) const {
    if (model) return ddpm_sample(*model, o, seed);
    if (fallback) return nearest_demo(*fallback, o).coeffs;
    throw InvalidScenario("GuidePrior: neither model nor dataset set");
  }
};

inline Observation observe(const InclineTask& task) {
  Observation o;
  o.p_rel_xy =
      (task.scenario.start.pos.head<3>() - task.center).head<2>();
  o.theta_inc = task.theta;
  return o;
}

inline PlanResult plan_two_stage(const InclineTask& task,
                                 const GuidePrior& prior,
                                 const TwoStageConfig& cfg = {},
                                 std::uint64_t seed = 0) {
  constexpr int kAttempts = 5;
  for (int attempt = 0;; ++attempt) {
    const ActionCoeffs a = prior.propose(observe(task), seed + attempt);
    std::vector<WaypointConstraint> guides =
        sample_guide_points(a, task.w_task, cfg.k_guide);
    // corridor construction can fail on grazing placements against the
    // rasterized surface; nudge the proposal and the task approach point
    // off the surface and try again
    Scenario sc = task.scenario;
    if (attempt > 0) {
      for (WaypointConstraint& g : guides) {
        g.position += 0.05 * attempt * task.normal;
      }
      sc.constraints[0].approach = task.w_task + 0.08 * attempt * task.normal;
    }
    try {
      return plan_guided(sc, guides, cfg);
    } catch (const PlannerError&) {
      if (attempt + 1 >= kAttempts) throw;
    }
  }
}

// ---------------------------------------------------------------------------
// Expert demonstrations.

// Hand-designed guide pair for data generation: half a meter from the task
// waypoint, leaning off the surface normal toward the start and goal sides.
inline std::vector<WaypointConstraint> expert_guides(const InclineTask& task) {
  const Vec3 n = task.normal.normalized();
  const Vec3 w = task.w_task;
  auto lean = [&](const Vec3& toward) {
    Vec3 t = toward - w;
    t -= t.dot(n) * n;
    if (t.norm() < 1e-6) t = Vec3::UnitX();
    t.normalize();
    const double phi = deg2rad(50.0);
    return Vec3(w + 0.5 * (std::cos(phi) * t + std::sin(phi) * n));
  };
  WaypointConstraint g;
  g.kind = WaypointConstraint::Kind::kQuadrotor;
  g.guide = true;
  std::vector<WaypointConstraint> out(2, g);
  out[0].position = lean(task.scenario.start.pos.head<3>());
  out[1].position = lean(task.scenario.goal.pos.head<3>());
  return out;
}

// Zero-constant quintic least squares through 15 equispaced window samples.
// Returns the per-axis stacked coefficients and writes the RMS residual.
inline ActionCoeffs fit_action_coeffs(const Trajectory6& traj, double t_task,
                                      const Vec3& task_point,
                                      double* rms = nullptr) {
  constexpr int kSamples = 15;
  MatX a(kSamples, 5);
  MatX y(kSamples, 3);
  for (int i = 0; i < kSamples; ++i) {
    const double tau = -1.0 + 2.0 * i / (kSamples - 1);
    const double t =
        std::clamp(t_task + tau, 0.0, traj.total_time());
    double tp = 1.0;
    for (int m = 0; m < 5; ++m) {
      tp *= tau;
      a(i, m) = tp;
    }
    y.row(i) = (Vec3(traj.eval(t, 0).head<3>()) - task_point).transpose();
  }
  const MatX sol = a.colPivHouseholderQr().solve(y);  // 5 x 3
  if (rms) {
    *rms = std::sqrt((a * sol - y).squaredNorm() / (kSamples * 3.0));
  }
  ActionCoeffs out;
  for (int m = 0; m < 5; ++m) {
    out.c[m] = sol(m, 0);
    out.c[5 + m] = sol(m, 1);
    out.c[10 + m] = sol(m, 2);
  }
  return out;
}

struct DemoGenReport {
  int attempts = 0;
  int accepted = 0;
  int rejected = 0;
};

// Keep a demonstration when the task check passed, the objective stayed
// reasonable and the quintic fit is tight.
inline bool demo_acceptable(bool task_ok, double cost, double fit_rms) {
  return task_ok && cost <= 1e5 && fit_rms < 0.02;
}

// Samples inclinations in [20, 60] deg and starts on a 1.5-3 m annulus, runs
// the guided two-stage plan with expert guides, and keeps runs that pass the
// task check with cost at most 1e5 and a clean quintic fit.
inline Dataset generate_demos(int n, std::uint64_t seed,
                              Skill skill = Skill::kStrike,
                              DemoGenReport* report = nullptr) {
  if (n < 1) throw InvalidScenario("generate_demos: n must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u_theta(deg2rad(20.0),
                                                 deg2rad(60.0));
  std::uniform_real_distribution<double> u_r(1.5, 3.0);
  std::uniform_real_distribution<double> u_psi(0.0, 2.0 * kPi);

  Dataset out;
  DemoGenReport rep;
  const int max_attempts = 10 * n;
  while (rep.attempts < max_attempts &&
         static_cast<int>(out.size()) < n) {
    ++rep.attempts;
    const double theta = u_theta(rng);
    const double r = u_r(rng);
    const double psi = u_psi(rng);
    const Vec2 rel(r * std::cos(psi), r * std::sin(psi));
    const InclineTask task = make_incline_task(skill, theta, rel);
    try {
      PlanResult res = plan_guided(task.scenario, expert_guides(task));
      const int task_index = 1;  // one guide precedes the task constraint
      const TaskCheck check = evaluate_incline_task(res, task, task_index);
      const Trajectory6 traj = res.trajectory();
      const int j = res.ctx.corridor.phi.at(task_index);
      const double t_task = traj.segment_start(j + 1);
      const Vec3 task_point = traj.eval(t_task, 0).head<3>();
      DemoRecord rec;
      rec.coeffs = fit_action_coeffs(traj, t_task, task_point, &rec.fit_rms);
      if (!demo_acceptable(check.success, res.cost, rec.fit_rms)) {
        ++rep.rejected;
        continue;
      }
      rec.obs.p_rel_xy = rel;
      rec.obs.theta_inc = theta;
      rec.cost = res.cost;
      out.push_back(rec);
    } catch (const PlannerError&) {
      ++rep.rejected;
    }
  }
  rep.accepted = static_cast<int>(out.size());
  if (report) *report = rep;
  if (static_cast<int>(out.size()) < n) {
    throw InsufficientYield("generate_demos: acceptance rate below 10%");
  }
  return out;
}

}  // namespace ampl

#endif  // AMPL_PRIOR_HPP_
