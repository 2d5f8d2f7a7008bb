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

#ifndef QFUNC_CHERNOFF_H
#define QFUNC_CHERNOFF_H

#include <vector>

#include "qfunc/channels.h"
#include "qfunc/qstate.h"

namespace qfunc {

/// Chernoff exponent (nats per copy) and the minimizing s.
///
/// One-shot distinguishable pairs (orthogonal pure states, disjoint outcome
/// supports) set `infinite`; `xi` is then +inf and must not be compared
/// numerically without checking the flag.
struct ChernoffResult {
    double xi = 0.0;
    double s_min = 0.5;
    int iterations = 1;
    bool infinite = false;

    double per_iteration() const { return xi / iterations; }
};

struct PriorPair {
    double pi0 = 0.5;
    double pi1 = 0.5;

    void validate() const;
};

/// tr(rho^(1-s) tau^s) with 0^p := 0 for every p.
double chernoff_trace_functional(const DensityMatrix& rho, const DensityMatrix& tau, double s);

/// -log inf_s tr(rho^(1-s) tau^s), minimized by golden-section search on [0, 1].
/// `iterations` only sets the per-iteration normalization of the result.
ChernoffResult quantum_chernoff_bound(const DensityMatrix& rho, const DensityMatrix& tau,
                                      int iterations = 1);

/// (1 - ||pi1 tau^{xN} - pi0 rho^{xN}||_1) / 2 for N <= 12 copies.
double minimal_error_probability(const DensityMatrix& rho, const DensityMatrix& tau, int n_copies,
                                 const PriorPair& priors = {});

struct InputStateSearch {
    int alpha_points = 61;
    int beta_points = 61;
    double min_step = 1e-6;
};

struct InputStateOptimum {
    double alpha;
    double beta;
    ChernoffResult bound;
};

/// Pure input state maximizing the bound between the n-fold faulty and ideal
/// outputs: grid over alpha in [0, pi], beta in [0, 2 pi), then coordinate
/// ascent with step halving.
InputStateOptimum optimize_input_state(const Channel& ideal, const Channel& faulty, int n_iterations,
                                       const InputStateSearch& search = {});

/// f(s) = x^(1-s) y^s + (1-x)^(1-s) (1-y)^s, 0^p := 0.
double classical_chernoff_f(double x, double y, double s);

/// Stationary point of f for x != y in (0, 1).
double classical_chernoff_s_min(double x, double y);

/// Chernoff exponent of two Bernoulli distributions with success probabilities x and y.
ChernoffResult classical_chernoff(double x, double y);

/// Outcome "+" probabilities cos^2(N theta/2) vs cos^2(N (theta + eps)/2).
ChernoffResult classical_chernoff_phase_gate(double theta, double eps, int n_iterations);

/// Angles in [lo, hi] where the ideal and faulty outcome distributions of the
/// iterated phase gate coincide, i.e. where the classical exponent vanishes.
std::vector<double> classical_phase_gate_zeros(double eps, int n_iterations, double lo, double hi,
                                               int scan_points = 4096);

/// Exact bound between rho(N tau (1 + eps)) and rho(N tau) for the |+> input,
/// rho(tau) = [[1, e^-tau], [e^-tau, 1]] / 2.
ChernoffResult dephasing_qcb(double tau, double eps, int n_iterations);

/// Leading small-eps behaviour of dephasing_qcb(...).per_iteration():
/// N tau^2 eps^2 / (8 (exp(2 N tau) - 1)).
double dephasing_qcb_small_eps(double tau, double eps, int n_iterations);

/// Output state rho(tau) of the dephasing channel for the |+> input.
DensityMatrix dephased_plus_state(double tau);

}  // namespace qfunc

#endif
