// Copyright 2026 The Weakwire Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WEAKWIRE_VEC3_H
#define WEAKWIRE_VEC3_H

#include <complex>

#include <Eigen/Dense>

namespace weakwire {

using Complex = std::complex<double>;

/// Complex 3-vector. Weak-value vectors and hidden-variable vectors are both of this form.
using CVec3 = Eigen::Vector3cd;

/// Unconjugated complex dot product: u.v = sum_j u_j v_j.
///
/// Eigen's `dot` conjugates its first argument, which is the wrong product here.
inline Complex hyperbolic_dot(const CVec3 &u, const CVec3 &v) {
    return u(0) * v(0) + u(1) * v(1) + u(2) * v(2);
}

/// Complex cross product without conjugation.
inline CVec3 complex_cross(const CVec3 &u, const CVec3 &v) {
    return CVec3(u(1) * v(2) - u(2) * v(1), u(2) * v(0) - u(0) * v(2), u(0) * v(1) - u(1) * v(0));
}

/// Largest componentwise modulus of a - b.
inline double max_abs_diff(const CVec3 &a, const CVec3 &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace weakwire

#endif
