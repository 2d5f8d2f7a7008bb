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

#ifndef QFUNC_NUMERICS_H
#define QFUNC_NUMERICS_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qfunc {

struct ScalarMinimum {
    double x;
    double value;
};

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
/// The endpoints are evaluated too and win if they are lower.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double tol = 1e-12);

/// Root of a continuous function with a sign change on [lo, hi], by bisection.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double tol = 1e-15);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Least-squares fit of log y = log(prefactor) + exponent * log x.
struct PowerLawFit {
    double prefactor;
    double exponent;
    double log_prefactor_stderr;
    double exponent_stderr;
    std::size_t points;
};
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

/// SplitMix64 finalizer; derives independent stream seeds from (master, index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). Each index runs exactly once; the first exception is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace qfunc

#endif
