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

#ifndef AMPL_COMMON_HPP
#define AMPL_COMMON_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace ampl {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

/// Base class for every recoverable planner error.
class PlannerError : public std::runtime_error {
 public:
  explicit PlannerError(const std::string& what) : std::runtime_error(what) {}
};

#define AMPL_DEFINE_ERROR(Name)                                        \
  class Name : public PlannerError {                                   \
   public:                                                             \
    explicit Name(const std::string& what = #Name) : PlannerError(what) {} \
  }

AMPL_DEFINE_ERROR(NoSolution);
AMPL_DEFINE_ERROR(OutOfWorkspace);
AMPL_DEFINE_ERROR(NoIntersection);
AMPL_DEFINE_ERROR(Singular);
AMPL_DEFINE_ERROR(DegenerateThrust);
AMPL_DEFINE_ERROR(GimbalDegenerate);
AMPL_DEFINE_ERROR(SingularSystem);
AMPL_DEFINE_ERROR(OutOfDomain);
AMPL_DEFINE_ERROR(NoPath);
AMPL_DEFINE_ERROR(SeedBlocked);
AMPL_DEFINE_ERROR(DegenerateDirection);
AMPL_DEFINE_ERROR(CorridorGap);
AMPL_DEFINE_ERROR(NonFiniteObjective);
AMPL_DEFINE_ERROR(NonFiniteLoss);
AMPL_DEFINE_ERROR(InsufficientYield);
AMPL_DEFINE_ERROR(InvalidScenario);
AMPL_DEFINE_ERROR(IoError);

#undef AMPL_DEFINE_ERROR

inline constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

}  // namespace ampl

#endif  // AMPL_COMMON_HPP
