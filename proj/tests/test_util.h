// Copyright 2026 The qfunc Authors
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

#ifndef QFUNC_TESTS_TEST_UTIL_H
#define QFUNC_TESTS_TEST_UTIL_H

#include <cmath>
#include <random>

#include "qfunc/qstate.h"

namespace qfunc::testutil {

inline double max_abs_diff(const Mat2& a, const Mat2& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Uniform point in the Bloch ball.
inline BlochVector random_bloch(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vec3 v(g(rng), g(rng), g(rng));
    v.normalize();
    return BlochVector(v * std::cbrt(u(rng)));
}

inline DensityMatrix random_state(std::mt19937_64& rng) { return bloch_to_density(random_bloch(rng)); }

inline DensityMatrix random_pure_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double alpha = std::acos(1.0 - 2.0 * u(rng));
    return DensityMatrix::pure(alpha, 2 * M_PI * u(rng));
}

}  // namespace qfunc::testutil

#endif
