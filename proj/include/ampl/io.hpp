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
//
// File formats: scenario/stats/corridor/model JSON, dataset JSON lines and
// the sampled trajectory CSV. All files are written atomically (temp +
// rename) and all angles stored in files are degrees.

#ifndef AMPL_IO_HPP_
#define AMPL_IO_HPP_

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ampl/delta.hpp"
#include "ampl/prior.hpp"
#include "ampl/solver.hpp"

namespace ampl {
namespace io {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Basic plumbing.

inline void write_text_atomic(const std::filesystem::path& path,
                              const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string());
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw IoError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

template <typename Derived>
Json jvec(const Eigen::MatrixBase<Derived>& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

template <typename Vec>
Vec jget(const Json& a) {
  Vec v;
  if (!a.is_array() || static_cast<int>(a.size()) != v.size()) {
    throw IoError("expected an array of " + std::to_string(v.size()) +
                  " numbers");
  }
  for (int i = 0; i < v.size(); ++i) v[i] = a[i].get<double>();
  return v;
}

// ---------------------------------------------------------------------------
// Scenario.

inline Json scenario_to_json(const Scenario& sc) {
  Json j;
  j["name"] = sc.name;
  j["seed"] = sc.seed;

  Json w;
  w["bounds"] = {{"lo", jvec(sc.world.bounds.lo)},
                 {"hi", jvec(sc.world.bounds.hi)}};
  w["resolution"] = sc.world.resolution;
  w["boxes"] = Json::array();
  for (const Aabb& b : sc.world.boxes) {
    w["boxes"].push_back({{"lo", jvec(b.lo)}, {"hi", jvec(b.hi)}});
  }
  w["slabs"] = Json::array();
  for (const Slab& s : sc.world.slabs) {
    w["slabs"].push_back({{"point", jvec(s.point)},
                          {"normal", jvec(s.normal)},
                          {"half_extents", jvec(s.half_extents)},
                          {"thickness", s.thickness},
                          {"u_hint", jvec(s.u_hint)}});
  }
  j["world"] = w;

  auto state = [](const BoundaryState& s) {
    return Json{{"pos", jvec(s.pos)}, {"vel", jvec(s.vel)},
                {"acc", jvec(s.acc)}};
  };
  j["start"] = state(sc.start);
  j["goal"] = state(sc.goal);

  j["constraints"] = Json::array();
  for (const WaypointConstraint& c : sc.constraints) {
    Json jc;
    jc["kind"] = c.kind == WaypointConstraint::Kind::kQuadrotor
                     ? "quadrotor"
                     : "end_effector";
    jc["position"] = jvec(c.position);
    jc["guide"] = c.guide;
    if (c.velocity) {
      jc["velocity"] = {{"mask", jvec(c.velocity->mask)},
                        {"v_des", jvec(c.velocity->v_des)}};
    }
    if (c.orientation) {
      jc["orientation"] = {{"o_des", jvec(c.orientation->o_des)}};
    }
    if (c.surface) {
      jc["surface"] = {{"point", jvec(c.surface->point)},
                       {"normal", jvec(c.surface->normal)},
                       {"half_extents", jvec(c.surface->half_extents)}};
    }
    if (c.approach) jc["approach"] = jvec(*c.approach);
    j["constraints"].push_back(jc);
  }

  j["motions"] = Json::array();
  for (const SegmentMotionConstraint& m : sc.motions) {
    j["motions"].push_back({{"active_segments", m.active_segments},
                            {"mask", jvec(m.mask)},
                            {"anchor", jvec(m.anchor)},
                            {"around_constraint", m.around_constraint}});
  }

  const AmParams& p = sc.params;
  j["params"] = {{"m_c", p.m_c},
                 {"m_e", p.m_e},
                 {"inertia_diag", jvec(p.inertia_diag)},
                 {"g", p.g},
                 {"p_D_in_B", jvec(p.p_D_in_B)},
                 {"p_B_in_D", jvec(p.p_B_in_D)},
                 {"L_u", p.L_u},
                 {"L_l", p.L_l},
                 {"r_s_eff", p.r_s_eff},
                 {"workspace_lo", jvec(p.workspace_lo)},
                 {"workspace_hi", jvec(p.workspace_hi)},
                 {"v_b_max", p.v_b_max},
                 {"v_e_max", p.v_e_max},
                 {"omega_xy_max", p.omega_xy_max},
                 {"f_lo", p.f_lo},
                 {"f_hi", p.f_hi},
                 {"r_e", p.r_e},
                 {"d_s", p.d_s},
                 {"p_e0_in_B", jvec(p.p_e0_in_B)}};

  const Weights& ww = sc.weights;
  j["weights"] = {{"rho_time", ww.rho_time},
                  {"w_safety", ww.w_safety},
                  {"w_workspace", ww.w_workspace},
                  {"w_vel", ww.w_vel},
                  {"w_bodyrate", ww.w_bodyrate},
                  {"w_thrust", ww.w_thrust},
                  {"w_ee_waypoint", ww.w_ee_waypoint},
                  {"w_axis", ww.w_axis},
                  {"w_vel_cons", ww.w_vel_cons},
                  {"w_orient", ww.w_orient},
                  {"N", ww.N},
                  {"f_ext", jvec(ww.f_ext)}};

  j["solve"] = {{"eps_grad", sc.solve.eps_grad},
                {"relative", sc.solve.relative},
                {"max_iters", sc.solve.max_iters},
                {"memory", sc.solve.memory}};

  j["sfc"] = {{"max_seg_len", sc.sfc.max_seg_len},
              {"bbox_halfsize", jvec(sc.sfc.bbox_halfsize)},
              {"n_avg", sc.sfc.n_avg},
              {"r_p", sc.sfc.r_p},
              {"active", sc.sfc.active},
              {"margin", sc.sfc.margin}};

  j["collision"] = {{"mode", sc.collision.varying ? "varying" : "fixed"},
                    {"fixed_h", sc.collision.fixed_h}};
  return j;
}

inline Scenario scenario_from_json(const Json& j) {
  Scenario sc;
  sc.name = j.value("name", std::string("unnamed"));
  sc.seed = j.value("seed", std::uint64_t{0});

  if (j.contains("world")) {
    const Json& w = j.at("world");
    if (w.contains("bounds")) {
      sc.world.bounds.lo = jget<Vec3>(w.at("bounds").at("lo"));
      sc.world.bounds.hi = jget<Vec3>(w.at("bounds").at("hi"));
    }
    sc.world.resolution = w.value("resolution", 0.1);
    for (const Json& b : w.value("boxes", Json::array())) {
      sc.world.boxes.push_back({jget<Vec3>(b.at("lo")), jget<Vec3>(b.at("hi"))});
    }
    for (const Json& s : w.value("slabs", Json::array())) {
      Slab slab;
      slab.point = jget<Vec3>(s.at("point"));
      slab.normal = jget<Vec3>(s.at("normal"));
      slab.half_extents = jget<Eigen::Vector2d>(s.at("half_extents"));
      slab.thickness = s.at("thickness").get<double>();
      if (s.contains("u_hint")) slab.u_hint = jget<Vec3>(s.at("u_hint"));
      sc.world.slabs.push_back(slab);
    }
  }

  auto state = [](const Json& js) {
    BoundaryState s;
    if (js.contains("pos")) s.pos = jget<Vec6>(js.at("pos"));
    if (js.contains("vel")) s.vel = jget<Vec6>(js.at("vel"));
    if (js.contains("acc")) s.acc = jget<Vec6>(js.at("acc"));
    return s;
  };
  if (j.contains("start")) sc.start = state(j.at("start"));
  if (j.contains("goal")) sc.goal = state(j.at("goal"));

  for (const Json& jc : j.value("constraints", Json::array())) {
    WaypointConstraint c;
    const std::string kind = jc.value("kind", std::string("quadrotor"));
    if (kind == "quadrotor") {
      c.kind = WaypointConstraint::Kind::kQuadrotor;
    } else if (kind == "end_effector") {
      c.kind = WaypointConstraint::Kind::kEndEffector;
    } else {
      throw IoError("unknown constraint kind: " + kind);
    }
    c.position = jget<Vec3>(jc.at("position"));
    c.guide = jc.value("guide", false);
    if (jc.contains("velocity")) {
      VelocitySpec v;
      v.mask = jget<Vec3>(jc.at("velocity").at("mask"));
      v.v_des = jget<Vec3>(jc.at("velocity").at("v_des"));
      c.velocity = v;
    }
    if (jc.contains("orientation")) {
      OrientationSpec o;
      o.o_des = jget<Vec3>(jc.at("orientation").at("o_des"));
      c.orientation = o;
    }
    if (jc.contains("surface")) {
      SurfaceSpec s;
      s.point = jget<Vec3>(jc.at("surface").at("point"));
      s.normal = jget<Vec3>(jc.at("surface").at("normal"));
      s.half_extents = jget<Eigen::Vector2d>(jc.at("surface").at("half_extents"));
      c.surface = s;
    }
    if (jc.contains("approach")) c.approach = jget<Vec3>(jc.at("approach"));
    sc.constraints.push_back(c);
  }

  for (const Json& jm : j.value("motions", Json::array())) {
    SegmentMotionConstraint m;
    m.active_segments = jm.value("active_segments", std::vector<int>{});
    m.mask = jget<Vec3>(jm.at("mask"));
    m.anchor = jget<Vec3>(jm.at("anchor"));
    m.around_constraint = jm.value("around_constraint", -1);
    sc.motions.push_back(m);
  }

  if (j.contains("params")) {
    const Json& p = j.at("params");
    AmParams& o = sc.params;
    o.m_c = p.value("m_c", o.m_c);
    o.m_e = p.value("m_e", o.m_e);
    if (p.contains("inertia_diag"))
      o.inertia_diag = jget<Vec3>(p.at("inertia_diag"));
    o.g = p.value("g", o.g);
    if (p.contains("p_D_in_B")) o.p_D_in_B = jget<Vec3>(p.at("p_D_in_B"));
    if (p.contains("p_B_in_D")) o.p_B_in_D = jget<Vec3>(p.at("p_B_in_D"));
    o.L_u = p.value("L_u", o.L_u);
    o.L_l = p.value("L_l", o.L_l);
    o.r_s_eff = p.value("r_s_eff", o.r_s_eff);
    if (p.contains("workspace_lo"))
      o.workspace_lo = jget<Vec3>(p.at("workspace_lo"));
    if (p.contains("workspace_hi"))
      o.workspace_hi = jget<Vec3>(p.at("workspace_hi"));
    o.v_b_max = p.value("v_b_max", o.v_b_max);
    o.v_e_max = p.value("v_e_max", o.v_e_max);
    o.omega_xy_max = p.value("omega_xy_max", o.omega_xy_max);
    o.f_lo = p.value("f_lo", o.f_lo);
    o.f_hi = p.value("f_hi", o.f_hi);
    o.r_e = p.value("r_e", o.r_e);
    o.d_s = p.value("d_s", o.d_s);
    if (p.contains("p_e0_in_B")) o.p_e0_in_B = jget<Vec3>(p.at("p_e0_in_B"));
  }

  if (j.contains("weights")) {
    const Json& w = j.at("weights");
    Weights& o = sc.weights;
    o.rho_time = w.value("rho_time", o.rho_time);
    o.w_safety = w.value("w_safety", o.w_safety);
    o.w_workspace = w.value("w_workspace", o.w_workspace);
    o.w_vel = w.value("w_vel", o.w_vel);
    o.w_bodyrate = w.value("w_bodyrate", o.w_bodyrate);
    o.w_thrust = w.value("w_thrust", o.w_thrust);
    o.w_ee_waypoint = w.value("w_ee_waypoint", o.w_ee_waypoint);
    o.w_axis = w.value("w_axis", o.w_axis);
    o.w_vel_cons = w.value("w_vel_cons", o.w_vel_cons);
    o.w_orient = w.value("w_orient", o.w_orient);
    o.N = w.value("N", o.N);
    if (w.contains("f_ext")) o.f_ext = jget<Vec3>(w.at("f_ext"));
  }

  if (j.contains("solve")) {
    const Json& s = j.at("solve");
    sc.solve.eps_grad = s.value("eps_grad", sc.solve.eps_grad);
    sc.solve.relative = s.value("relative", sc.solve.relative);
    sc.solve.max_iters = s.value("max_iters", sc.solve.max_iters);
    sc.solve.memory = s.value("memory", sc.solve.memory);
  }

  if (j.contains("sfc")) {
    const Json& s = j.at("sfc");
    sc.sfc.max_seg_len = s.value("max_seg_len", sc.sfc.max_seg_len);
    if (s.contains("bbox_halfsize"))
      sc.sfc.bbox_halfsize = jget<Vec3>(s.at("bbox_halfsize"));
    sc.sfc.n_avg = s.value("n_avg", sc.sfc.n_avg);
    sc.sfc.r_p = s.value("r_p", sc.sfc.r_p);
    sc.sfc.active = s.value("active", sc.sfc.active);
    sc.sfc.margin = s.value("margin", sc.sfc.margin);
  }

  if (j.contains("collision")) {
    const std::string mode =
        j.at("collision").value("mode", std::string("varying"));
    if (mode == "varying") {
      sc.collision.varying = true;
    } else if (mode == "fixed") {
      sc.collision.varying = false;
    } else {
      throw IoError("unknown collision mode: " + mode);
    }
    sc.collision.fixed_h =
        j.at("collision").value("fixed_h", sc.collision.fixed_h);
  }
  return sc;
}

inline void save_scenario(const std::filesystem::path& path,
                          const Scenario& sc) {
  write_text_atomic(path, scenario_to_json(sc).dump(2) + "\n");
}

inline Scenario load_scenario(const std::filesystem::path& path) {
  // parse errors surface with byte positions from the JSON layer
  return scenario_from_json(Json::parse(read_text(path)));
}

// ---------------------------------------------------------------------------
// Corridor.

inline Json corridor_to_json(const Corridor& c) {
  Json j;
  j["polyhedra"] = Json::array();
  for (const Polyhedron& p : c.polys) {
    Json jp;
    jp["normals"] = Json::array();
    jp["offsets"] = Json::array();
    for (const Halfplane& h : p.halfplanes) {
      jp["normals"].push_back(jvec(h.n));
      jp["offsets"].push_back(h.b);
    }
    j["polyhedra"].push_back(jp);
  }
  j["phi"] = Json::array();
  for (const auto& [lam, seg] : c.phi) {
    j["phi"].push_back({{"constraint", lam}, {"junction", seg}});
  }
  return j;
}

inline Corridor corridor_from_json(const Json& j) {
  Corridor c;
  for (const Json& jp : j.value("polyhedra", Json::array())) {
    Polyhedron p;
    const Json& ns = jp.at("normals");
    const Json& bs = jp.at("offsets");
    if (ns.size() != bs.size()) throw IoError("corridor: ragged polyhedron");
    for (std::size_t i = 0; i < ns.size(); ++i) {
      p.halfplanes.push_back({jget<Vec3>(ns[i]), bs[i].get<double>()});
    }
    c.polys.push_back(p);
  }
  for (const Json& je : j.value("phi", Json::array())) {
    c.phi[je.at("constraint").get<int>()] = je.at("junction").get<int>();
  }
  return c;
}

// ---------------------------------------------------------------------------
// Plan statistics.

// Wall-clock timings deliberately stay out of this document so that reruns
// with identical inputs produce byte-identical stats; timing goes into a
// sidecar file instead.
inline Json stats_to_json(const PlanResult& res, const Scenario& sc) {
  Json j;
  j["scenario"] = sc.name;
  j["seed"] = sc.seed;
  j["converged"] = res.converged;
  j["cost"] = res.cost;
  j["segments"] = res.vars.segments();
  j["total_time_s"] = res.trajectory().total_time();

  const CostBreakdown& b = res.breakdown;
  j["breakdown"] = {{"smooth", b.smooth},         {"time", b.time},
                    {"safety", b.safety},         {"workspace", b.workspace},
                    {"velocity", b.velocity},     {"bodyrate", b.bodyrate},
                    {"thrust", b.thrust},         {"ee_waypoint", b.ee_waypoint},
                    {"axis", b.axis},             {"vel_cons", b.vel_cons},
                    {"orientation", b.orientation}};

  j["stages"] = Json::array();
  for (const StageStats& st : res.stages) {
    j["stages"].push_back({{"iterations", st.iterations},
                           {"cost", st.cost},
                           {"grad_norm", st.grad_norm},
                           {"converged", st.converged}});
  }
  j["waypoint_errors"] = res.waypoint_errors;

  const TrajectoryReport rep =
      report(res.trajectory(), sc.params, sc.weights.f_ext);
  j["limits"] = {{"v_b_max", rep.v_b_max},
                 {"v_e_max", rep.v_e_max},
                 {"thrust_min", rep.thrust_min},
                 {"thrust_max", rep.thrust_max},
                 {"omega_xy_max", rep.omega_xy_max},
                 {"h_min", rep.h_min},
                 {"h_max", rep.h_max}};
  return j;
}

// ---------------------------------------------------------------------------
// Trajectory CSV.

namespace detail {

// Joint angles for reporting. Soft penalties can leave samples outside the
// workspace cuboid, and the deep cuboid corners themselves sit outside the
// arm's reachable set, so retract toward the workspace center axis until the
// inverse kinematics admits a solution.
inline Vec3 delta_ik_clamped(const Vec3& p_e_D, const AmParams& params) {
  const Vec3 clamped = p_e_D.cwiseMax(params.workspace_lo)
                           .cwiseMin(params.workspace_hi);
  const Vec3 center(0.0, 0.0,
                    0.5 * (params.workspace_lo.z() + params.workspace_hi.z()));
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 30; ++it) {
    const double s = 0.5 * (lo + hi);
    try {
      (void)delta_ik(center + s * (clamped - center), params);
      lo = s;
    } catch (const PlannerError&) {
      hi = s;
    }
  }
  return delta_ik(center + lo * (clamped - center), params);
}

}  // namespace detail

inline constexpr const char* kTrajectoryCsvHeader =
    "t,p_b_x,p_b_y,p_b_z,v_b_x,v_b_y,v_b_z,a_b_x,a_b_y,a_b_z,"
    "j_b_x,j_b_y,j_b_z,p_e_x,p_e_y,p_e_z,v_e_x,v_e_y,v_e_z,"
    "q1,q2,q3,thrust,omega_x,omega_y,h,roll_deg,pitch_deg";

inline std::string trajectory_csv(const Trajectory6& traj,
                                  const AmParams& params, const Vec3& f_ext,
                                  double dt = 0.01) {
  std::string out(kTrajectoryCsvHeader);
  out += '\n';
  char buf[64];
  auto put = [&out, &buf](double x, char sep) {
    std::snprintf(buf, sizeof(buf), "%.9g%c", x, sep);
    out += buf;
  };
  const double total = traj.total_time();
  const int n = static_cast<int>(std::floor(total / dt + 1e-9));
  for (int i = 0; i <= n; ++i) {
    const double t = std::min(i * dt, total);
    const Vec6 v0 = traj.eval(t, 0);
    const Vec6 v1 = traj.eval(t, 1);
    const Vec6 v2 = traj.eval(t, 2);
    const Vec6 v3 = traj.eval(t, 3);
    const AttitudeState att =
        flat_to_attitude(v2.head<3>(), v3.head<3>(), f_ext, params);
    const Vec3 p_e_D = v0.tail<3>();
    const Vec3 q = detail::delta_ik_clamped(p_e_D, params);
    const double h = ellipsoid_height(p_e_D, params);
    // ZYX convention; yaw is identically zero by the flatness choice
    const double roll = std::atan2(att.R_B(2, 1), att.R_B(2, 2));
    const double pitch = -std::asin(att.R_B(2, 0));

    put(t, ',');
    for (int k = 0; k < 3; ++k) put(v0[k], ',');
    for (int k = 0; k < 3; ++k) put(v1[k], ',');
    for (int k = 0; k < 3; ++k) put(v2[k], ',');
    for (int k = 0; k < 3; ++k) put(v3[k], ',');
    for (int k = 3; k < 6; ++k) put(v0[k], ',');
    for (int k = 3; k < 6; ++k) put(v1[k], ',');
    for (int k = 0; k < 3; ++k) put(q[k], ',');
    put(att.thrust, ',');
    put(att.omega_xy.x(), ',');
    put(att.omega_xy.y(), ',');
    put(h, ',');
    put(rad2deg(roll), ',');
    put(rad2deg(pitch), '\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Demonstration dataset (JSON lines).

inline std::string dataset_to_jsonl(const Dataset& ds) {
  std::string out;
  for (const DemoRecord& r : ds) {
    Json j;
    j["obs"] = {{"p_rel_xy", jvec(r.obs.p_rel_xy)},
                {"theta_inc_deg", rad2deg(r.obs.theta_inc)}};
    j["coeffs"] = jvec(r.coeffs.c);
    j["cost"] = r.cost;
    j["fit_rms"] = r.fit_rms;
    out += j.dump();
    out += '\n';
  }
  return out;
}

inline Dataset dataset_from_jsonl(const std::string& text) {
  Dataset ds;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    const Json j = Json::parse(line);
    DemoRecord r;
    r.obs.p_rel_xy = jget<Vec2>(j.at("obs").at("p_rel_xy"));
    r.obs.theta_inc = deg2rad(j.at("obs").at("theta_inc_deg").get<double>());
    r.coeffs.c = jget<Vec15>(j.at("coeffs"));
    r.cost = j.value("cost", 0.0);
    r.fit_rms = j.value("fit_rms", 0.0);
    ds.push_back(r);
  }
  return ds;
}

inline void save_dataset(const std::filesystem::path& path,
                         const Dataset& ds) {
  write_text_atomic(path, dataset_to_jsonl(ds));
}

inline Dataset load_dataset(const std::filesystem::path& path) {
  return dataset_from_jsonl(read_text(path));
}

// ---------------------------------------------------------------------------
// Diffusion model file: schedule, layer shapes and the flat parameter
// vector. The reload reproduces sampling bit-exactly because JSON doubles
// round trip losslessly.

inline Json model_to_json(const DiffusionModel& m) {
  if (!m.net.initialized()) throw IoError("model_to_json: untrained model");
  Json j;
  j["schedule"] = {{"k", m.sched.steps()}, {"beta", jvec(m.sched.beta)}};
  j["layers"] = {{"w1", {Mlp::kHidden, Mlp::kIn}},
                 {"w2", {Mlp::kHidden, Mlp::kHidden}},
                 {"w3", {Mlp::kOut, Mlp::kHidden}},
                 {"b1", {Mlp::kHidden}},
                 {"b2", {Mlp::kHidden}},
                 {"b3", {Mlp::kOut}}};
  j["params"] = jvec(m.net.params());
  return j;
}

inline DiffusionModel model_from_json(const Json& j) {
  DiffusionModel m;
  const Json& sched = j.at("schedule");
  const Json& beta = sched.at("beta");
  const int k = sched.at("k").get<int>();
  if (static_cast<int>(beta.size()) != k) {
    throw IoError("model: schedule length mismatch");
  }
  m.sched.beta.resize(k);
  for (int i = 0; i < k; ++i) m.sched.beta[i] = beta[i].get<double>();
  m.sched.alpha = VecX::Ones(k) - m.sched.beta;
  m.sched.alpha_bar.resize(k);
  double prod = 1.0;
  for (int i = 0; i < k; ++i) {
    prod *= m.sched.alpha[i];
    m.sched.alpha_bar[i] = prod;
  }

  const Json& params = j.at("params");
  VecX p(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    p[static_cast<int>(i)] = params[i].get<double>();
  }
  // shapes are fixed at compile time; reject foreign layouts early
  const int expected = Mlp::kHidden * Mlp::kIn + Mlp::kHidden * Mlp::kHidden +
                       Mlp::kOut * Mlp::kHidden + 2 * Mlp::kHidden + Mlp::kOut;
  if (p.size() != expected) throw IoError("model: parameter count mismatch");
  m.net.set_params(p);
  return m;
}

inline void save_model(const std::filesystem::path& path,
                       const DiffusionModel& m) {
  write_text_atomic(path, model_to_json(m).dump(2) + "\n");
}

inline DiffusionModel load_model(const std::filesystem::path& path) {
  return model_from_json(Json::parse(read_text(path)));
}

}  // namespace io
}  // namespace ampl

#endif  // AMPL_IO_HPP_
