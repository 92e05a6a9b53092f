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

#ifndef AMPL_SCENARIO_HPP_
#define AMPL_SCENARIO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ampl/constraints.hpp"
#include "ampl/corridor.hpp"
#include "ampl/grid.hpp"
#include "ampl/lbfgs.hpp"
#include "ampl/spline.hpp"

namespace ampl {

struct Scenario {
  std::string name = "unnamed";
  WorldGeom world;
  BoundaryState start, goal;
  std::vector<WaypointConstraint> constraints;
  std::vector<SegmentMotionConstraint> motions;
  AmParams params;
  Weights weights;
  SolveConfig solve;
  SfcConfig sfc;
  CollisionModel collision;
  std::uint64_t seed = 0;

  void validate() const {
    if (world.resolution <= 0.0) {
      throw InvalidScenario("scenario: resolution must be positive");
    }
    params.validate();
    auto check_free = [&](const Vec3& p, const char* what) {
      if (!world.bounds.contains(p)) {
        throw InvalidScenario(std::string("scenario: ") + what +
                              " outside bounds");
      }
      if (world.occupied_point(p)) {
        throw InvalidScenario(std::string("scenario: ") + what +
                              " inside an obstacle");
      }
    };
    check_free(start.pos.head<3>(), "start");
    check_free(goal.pos.head<3>(), "goal");
    for (const WaypointConstraint& c : constraints) {
      if (c.orientation && c.orientation->o_des.norm() < 1e-9) {
        throw InvalidScenario("scenario: zero orientation target");
      }
    }
  }
};

}  // namespace ampl

#endif  // AMPL_SCENARIO_HPP_
