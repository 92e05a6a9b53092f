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

#ifndef AMPL_DUAL_HPP
#define AMPL_DUAL_HPP

#include <Eigen/Dense>
#include <cmath>

namespace ampl {

// Forward-mode dual scalar with a fixed number of derivative directions.
// Used for the attitude-chained penalty terms whose hand-written gradients
// would be long and brittle; derivatives are exact to machine precision.
template <int N>
struct Dual {
  using Partials = Eigen::Matrix<double, N, 1>;

  double v = 0.0;
  Partials d = Partials::Zero();

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: implicit constants
  Dual(double value, const Partials& partials) : v(value), d(partials) {}

  static Dual seed(double value, int k) {
    Dual r(value);
    r.d[k] = 1.0;
    return r;
  }

  Dual operator-() const { return Dual(-v, -d); }

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }

  friend Dual operator+(const Dual& a, const Dual& b) { return Dual(a.v + b.v, a.d + b.d); }
  friend Dual operator-(const Dual& a, const Dual& b) { return Dual(a.v - b.v, a.d - b.d); }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return Dual(a.v * b.v, a.v * b.d + b.v * a.d);
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    const double inv = 1.0 / b.v;
    return Dual(a.v * inv, (a.d - (a.v * inv) * b.d) * inv);
  }
  friend Dual operator+(double a, const Dual& b) { return Dual(a + b.v, b.d); }
  friend Dual operator-(double a, const Dual& b) { return Dual(a - b.v, -b.d); }
  friend Dual operator*(double a, const Dual& b) { return Dual(a * b.v, a * b.d); }
  friend Dual operator+(const Dual& a, double b) { return Dual(a.v + b, a.d); }
  friend Dual operator-(const Dual& a, double b) { return Dual(a.v - b, a.d); }
  friend Dual operator*(const Dual& a, double b) { return Dual(a.v * b, a.d * b); }
  friend Dual operator/(const Dual& a, double b) { return Dual(a.v / b, a.d / b); }

  friend Dual sqrt(const Dual& a) {
    const double s = std::sqrt(a.v);
    return Dual(s, a.d / (2.0 * s));
  }
};

template <int N>
struct DualVec3 {
  Dual<N> x[3];
  Dual<N>& operator[](int i) { return x[i]; }
  const Dual<N>& operator[](int i) const { return x[i]; }
};

template <int N>
DualVec3<N> operator+(const DualVec3<N>& a, const DualVec3<N>& b) {
  DualVec3<N> r;
  for (int i = 0; i < 3; ++i) r[i] = a[i] + b[i];
  return r;
}

template <int N>
DualVec3<N> operator-(const DualVec3<N>& a, const DualVec3<N>& b) {
  DualVec3<N> r;
  for (int i = 0; i < 3; ++i) r[i] = a[i] - b[i];
  return r;
}

template <int N>
DualVec3<N> operator*(const Dual<N>& s, const DualVec3<N>& a) {
  DualVec3<N> r;
  for (int i = 0; i < 3; ++i) r[i] = s * a[i];
  return r;
}

template <int N>
DualVec3<N> operator*(double s, const DualVec3<N>& a) {
  DualVec3<N> r;
  for (int i = 0; i < 3; ++i) r[i] = s * a[i];
  return r;
}

template <int N>
DualVec3<N> operator/(const DualVec3<N>& a, const Dual<N>& s) {
  DualVec3<N> r;
  for (int i = 0; i < 3; ++i) r[i] = a[i] / s;
  return r;
}

template <int N>
DualVec3<N> dual_cross(const DualVec3<N>& a, const DualVec3<N>& b) {
  DualVec3<N> r;
  r[0] = a[1] * b[2] - a[2] * b[1];
  r[1] = a[2] * b[0] - a[0] * b[2];
  r[2] = a[0] * b[1] - a[1] * b[0];
  return r;
}

template <int N>
Dual<N> dual_dot(const DualVec3<N>& a, const DualVec3<N>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <int N>
Dual<N> dual_norm(const DualVec3<N>& a) {
  return sqrt(dual_dot(a, a));
}

// Seeds a 3-vector into derivative directions k, k+1, k+2.
template <int N>
DualVec3<N> dual_seed_vec3(const Eigen::Vector3d& x, int k) {
  DualVec3<N> r;
  for (int i = 0; i < 3; ++i) r[i] = Dual<N>::seed(x[i], k + i);
  return r;
}

template <int N>
DualVec3<N> dual_const_vec3(const Eigen::Vector3d& x) {
  DualVec3<N> r;
  for (int i = 0; i < 3; ++i) r[i] = Dual<N>(x[i]);
  return r;
}

}  // namespace ampl

#endif  // AMPL_DUAL_HPP
