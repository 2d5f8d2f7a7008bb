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

#include "qfunc/chernoff.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qfunc/errors.h"
#include "qfunc/numerics.h"

namespace qfunc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Overlaps and f-minima below this mean one-shot distinguishability.
constexpr double kZeroOverlap = 1e-15;
constexpr double kGoldenTolerance = 1e-12;

ChernoffResult infinite_result(int iterations) {
    ChernoffResult r;
    r.xi = kInf;
    r.infinite = true;
    r.iterations = iterations;
    return r;
}

double neg_log(double q) { return std::max(0.0, -std::log(q)); }

bool interior(double p) { return p > 0.0 && p < 1.0; }

// f(s) - 1 without cancellation for x, y in (0, 1).
double classical_f_minus_one(double x, double y, double s) {
    double a = std::log1p((y - x) / x);
    double b = std::log1p((x - y) / (1.0 - x));
    return x * std::expm1(s * a) + (1.0 - x) * std::expm1(s * b);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

void PriorPair::validate() const {
    if (!(pi0 > 0.0) || !(pi1 > 0.0) || std::abs(pi0 + pi1 - 1.0) > kStateTolerance) {
        throw InvalidParameter("priors must be positive and sum to 1");
    }
}

double chernoff_trace_functional(const DensityMatrix& rho, const DensityMatrix& tau, double s) {
    auto a = rho.spectrum();
    auto b = tau.spectrum();
    double c = a.axis.dot(b.axis);
    double total = 0.0;
    for (int i = 0; i < 2; ++i) {
        double li = eigenvalue_power(a.eigenvalues[i], 1.0 - s);
        if (li == 0.0) {
            continue;
        }
        for (int j = 0; j < 2; ++j) {
            double mj = eigenvalue_power(b.eigenvalues[j], s);
            double sign = (i == j) ? 1.0 : -1.0;
            // tr(P_i Q_j) for Bloch-axis projectors.
            total += li * mj * 0.5 * (1.0 + sign * c);
        }
    }
    return total;
}

ChernoffResult quantum_chernoff_bound(const DensityMatrix& rho, const DensityMatrix& tau, int iterations) {
    if (iterations < 1) {
        throw InvalidParameter("iteration count must be at least 1");
    }
    ChernoffResult r;
    r.iterations = iterations;
    BlochVector br = rho.bloch();
    BlochVector bt = tau.bloch();
    if (br.is_pure() && bt.is_pure()) {
        double overlap = 0.5 * (1.0 + br.vector().normalized().dot(bt.vector().normalized()));
        if (overlap < kZeroOverlap) {
            return infinite_result(iterations);
        }
        r.xi = neg_log(overlap);
        r.s_min = 0.5;
        return r;
    }
    auto q = [&](double s) { return chernoff_trace_functional(rho, tau, s); };
    auto best = golden_section_minimize(q, 0.0, 1.0, kGoldenTolerance);
    if (best.value < kZeroOverlap) {
        return infinite_result(iterations);
    }
    r.xi = neg_log(best.value);
    r.s_min = best.x;
    return r;
}

double minimal_error_probability(const DensityMatrix& rho, const DensityMatrix& tau, int n_copies,
                                 const PriorPair& priors) {
    priors.validate();
    if (n_copies < 1) {
        throw InvalidParameter("need at least one copy");
    }
    if (n_copies > 12) {
        throw ResourceLimit("minimal_error_probability supports at most 12 copies");
    }
    Eigen::MatrixXcd rn = rho.matrix();
    Eigen::MatrixXcd tn = tau.matrix();
    for (int k = 1; k < n_copies; ++k) {
        rn = kron(rn, rho.matrix());
        tn = kron(tn, tau.matrix());
    }
    Eigen::MatrixXcd diff = priors.pi1 * tn - priors.pi0 * rn;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
    double norm = solver.eigenvalues().cwiseAbs().sum();
    return std::clamp(0.5 * (1.0 - norm), 0.0, 0.5);
}

InputStateOptimum optimize_input_state(const Channel& ideal, const Channel& faulty, int n_iterations,
                                       const InputStateSearch& search) {
    if (search.alpha_points < 2 || search.beta_points < 1) {
        throw InvalidParameter("input-state grid is too small");
    }
    auto evaluate = [&](double alpha, double beta) {
        auto in = DensityMatrix::pure(alpha, beta);
        return quantum_chernoff_bound(iterate_channel(faulty, in, n_iterations),
                                      iterate_channel(ideal, in, n_iterations), n_iterations);
    };
    auto better = [](const ChernoffResult& a, const ChernoffResult& b) {
        if (a.infinite) {
            return !b.infinite;
        }
        return !b.infinite && a.xi > b.xi;
    };

    const double alpha_step = M_PI / (search.alpha_points - 1);
    const double beta_step = 2 * M_PI / search.beta_points;
    InputStateOptimum best{0.0, 0.0, evaluate(0.0, 0.0)};
    for (int i = 0; i < search.alpha_points; ++i) {
        for (int j = 0; j < search.beta_points; ++j) {
            double alpha = i * alpha_step;
            double beta = j * beta_step;
            auto r = evaluate(alpha, beta);
            if (better(r, best.bound)) {
                best = {alpha, beta, r};
            }
            if (best.bound.infinite) {
                return best;
            }
        }
    }

    double da = alpha_step;
    double db = beta_step;
    while (da >= search.min_step || db >= search.min_step) {
        bool moved = false;
        for (double step : {da, -da}) {
            double alpha = std::clamp(best.alpha + step, 0.0, M_PI);
            auto r = evaluate(alpha, best.beta);
            if (better(r, best.bound)) {
                best = {alpha, best.beta, r};
                moved = true;
            }
        }
        for (double step : {db, -db}) {
            double beta = std::fmod(best.beta + step + 2 * M_PI, 2 * M_PI);
            auto r = evaluate(best.alpha, beta);
            if (better(r, best.bound)) {
                best = {best.alpha, beta, r};
                moved = true;
            }
        }
        if (best.bound.infinite) {
            break;
        }
        if (!moved) {
            da *= 0.5;
            db *= 0.5;
        }
    }
    return best;
}

double classical_chernoff_f(double x, double y, double s) {
    return eigenvalue_power(x, 1.0 - s) * eigenvalue_power(y, s) +
           eigenvalue_power(1.0 - x, 1.0 - s) * eigenvalue_power(1.0 - y, s);
}

double classical_chernoff_s_min(double x, double y) {
    if (!interior(x) || !interior(y) || x == y) {
        throw InvalidParameter("closed-form s_min needs distinct x, y in (0, 1)");
    }
    // f'(s) = 0  <=>  exp(s (a - b)) = -(1 - x) b / (x a).
    double a = std::log(x) - std::log(y);
    double b = std::log1p(-y) - std::log1p(-x);
    double ratio = (1.0 - x) * b / (x * a);
    double s = std::log(ratio) / std::log(((1.0 - x) * y) / (x * (1.0 - y)));
    return s;
}

ChernoffResult classical_chernoff(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0) || !(y >= 0.0 && y <= 1.0)) {
        throw InvalidParameter("probabilities must lie in [0, 1]");
    }
    ChernoffResult r;
    if (x == y) {
        return r;
    }
    if (interior(x) && interior(y)) {
        double s = classical_chernoff_s_min(x, y);
        if (std::isfinite(s) && s >= 0.0 && s <= 1.0) {
            r.s_min = s;
            r.xi = std::max(0.0, -std::log1p(classical_f_minus_one(x, y, s)));
            return r;
        }
    }
    auto best = golden_section_minimize([&](double s) { return classical_chernoff_f(x, y, s); }, 0.0,
                                        1.0, kGoldenTolerance);
    if (best.value < kZeroOverlap) {
        return infinite_result(1);
    }
    r.s_min = best.x;
    r.xi = neg_log(best.value);
    return r;
}

ChernoffResult classical_chernoff_phase_gate(double theta, double eps, int n_iterations) {
    if (n_iterations < 1) {
        throw InvalidParameter("iteration count must be at least 1");
    }
    double cx = std::cos(n_iterations * theta / 2);
    double cy = std::cos(n_iterations * (theta + eps) / 2);
    auto r = classical_chernoff(cx * cx, cy * cy);
    r.iterations = n_iterations;
    return r;
}

std::vector<double> classical_phase_gate_zeros(double eps, int n_iterations, double lo, double hi,
                                               int scan_points) {
    if (n_iterations < 1 || !(hi > lo) || scan_points < 2) {
        throw InvalidParameter("invalid zero-search range");
    }
    auto diff = [&](double theta) {
        double cx = std::cos(n_iterations * theta / 2);
        double cy = std::cos(n_iterations * (theta + eps) / 2);
        return cx * cx - cy * cy;
    };
    std::vector<double> zeros;
    double prev_t = lo;
    double prev_f = diff(lo);
    if (prev_f == 0.0) {
        zeros.push_back(lo);
    }
    for (int i = 1; i < scan_points; ++i) {
        double t = lo + (hi - lo) * i / (scan_points - 1);
        double f = diff(t);
        if (f == 0.0) {
            zeros.push_back(t);
        } else if (prev_f != 0.0 && (f < 0.0) != (prev_f < 0.0)) {
            zeros.push_back(bisect_root(diff, prev_t, t));
        }
        prev_t = t;
        prev_f = f;
    }
    return zeros;
}

ChernoffResult dephasing_qcb(double tau, double eps, int n_iterations) {
    if (!(tau > 0.0)) {
        throw InvalidParameter("tau must be positive");
    }
    if (!(eps > -1.0)) {
        throw InvalidParameter("relative rate error must exceed -1");
    }
    if (n_iterations < 1) {
        throw InvalidParameter("iteration count must be at least 1");
    }
    double nt = n_iterations * tau;
    double x = 0.5 * (1.0 + std::exp(-nt * (1.0 + eps)));
    double y = 0.5 * (1.0 + std::exp(-nt));
    auto r = classical_chernoff(x, y);
    r.iterations = n_iterations;
    return r;
}

double dephasing_qcb_small_eps(double tau, double eps, int n_iterations) {
    if (!(tau > 0.0)) {
        throw InvalidParameter("tau must be positive");
    }
    if (n_iterations < 1) {
        throw InvalidParameter("iteration count must be at least 1");
    }
    double n = n_iterations;
    return n * tau * tau * eps * eps / (8.0 * std::expm1(2.0 * n * tau));
}

DensityMatrix dephased_plus_state(double tau) {
    DephasingParams p;
    p.gamma = 1.0;
    p.t = tau;
    return apply_dephasing(p, M_PI / 2, 0.0);
}

}  // namespace qfunc
