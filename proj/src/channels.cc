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

#include "qfunc/channels.h"

#include <cmath>

#include "qfunc/errors.h"
#include "qfunc/numerics.h"

namespace qfunc {

namespace {

DensityMatrix conjugate(const Mat2& u, const DensityMatrix& rho) {
    Mat2 out = u * rho.matrix() * u.adjoint();
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix(out, DensityMatrix::Unchecked{});
}

}  // namespace

Axis::Axis(const Vec3& n) {
    if (!n.allFinite() || std::abs(n.norm() - 1.0) > kPureTolerance) {
        throw InvalidParameter("rotation axis must be a unit vector");
    }
    n_ = n.normalized();
}

Mat2 rotation_unitary(const Axis& axis, double theta) {
    return std::cos(theta / 2) * pauli::kIdentity -
           Complex(0.0, std::sin(theta / 2)) * pauli_dot(axis.vector());
}

Mat2 rotation_unitary(const Vec3& axis, double theta) { return rotation_unitary(Axis(axis), theta); }

double wrap_angle(double theta) {
    double r = std::remainder(theta, 2 * M_PI);
    if (r <= -M_PI) {
        r += 2 * M_PI;
    }
    return r;
}

void DephasingParams::validate() const {
    if (!(gamma >= 0.0)) {
        throw InvalidParameter("dephasing rate must be non-negative");
    }
    if (!(t >= 0.0)) {
        throw InvalidParameter("evolution time must be non-negative");
    }
}

void ErrorDistribution::validate() const {
    if (!(width >= 0.0)) {
        throw InvalidParameter("error distribution width must be non-negative");
    }
    if (quadrature_nodes < 1) {
        throw InvalidParameter("quadrature needs at least one node");
    }
}

DensityMatrix apply_phase_gate(const PhaseGateParams& p, const DensityMatrix& rho) {
    return conjugate(rotation_unitary(p.axis, p.theta), rho);
}

DensityMatrix apply_dephasing(const DephasingParams& p, double alpha, double beta) {
    p.validate();
    double c = std::cos(alpha / 2);
    double s = std::sin(alpha / 2);
    Complex coh = 0.5 * std::sin(alpha) * std::exp(Complex(-p.gamma * p.t, -(p.omega * p.t + beta)));
    Mat2 m;
    m << c * c, coh, std::conj(coh), s * s;
    return DensityMatrix(m, DensityMatrix::Unchecked{});
}

DensityMatrix apply_dephasing(const DephasingParams& p, const DensityMatrix& rho) {
    p.validate();
    return CompiledChannel::coherence(std::exp(Complex(-p.gamma * p.t, -p.omega * p.t))).apply(rho);
}

DensityMatrix averaged_output(const PhaseGateParams& p, const ErrorDistribution& d,
                              const DensityMatrix& rho, int n) {
    d.validate();
    if (n < 1) {
        throw InvalidParameter("iteration count must be at least 1");
    }
    auto gate_at = [&](double eps) {
        return conjugate(rotation_unitary(p.axis, n * (p.theta + eps)), rho).matrix();
    };
    if (d.kind == ErrorDistribution::Kind::Deterministic) {
        return DensityMatrix(gate_at(d.offset), DensityMatrix::Unchecked{});
    }
    if (d.width == 0.0) {
        return DensityMatrix(gate_at(0.0), DensityMatrix::Unchecked{});
    }
    auto rule = gauss_legendre(d.quadrature_nodes, 0.0, d.width);
    Mat2 acc = Mat2::Zero();
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        acc += rule.weights[j] * gate_at(rule.nodes[j]);
    }
    acc /= d.width;
    acc = 0.5 * (acc + acc.adjoint()).eval();
    return DensityMatrix(acc, DensityMatrix::Unchecked{});
}

DensityMatrix apply_channel(const Channel& channel, const DensityMatrix& rho) {
    return iterate_channel(channel, rho, 1);
}

DensityMatrix iterate_channel(const Channel& channel, const DensityMatrix& rho, int n) {
    if (n < 1) {
        throw InvalidParameter("iteration count must be at least 1");
    }
    struct Visitor {
        const DensityMatrix& rho;
        int n;

        DensityMatrix operator()(const PhaseGate& g) const {
            Mat2 u = rotation_unitary(g.params.axis, g.params.theta);
            DensityMatrix out = rho;
            for (int i = 0; i < n; ++i) {
                out = conjugate(u, out);
            }
            return out;
        }
        DensityMatrix operator()(const DephasingGate& g) const {
            DensityMatrix out = rho;
            for (int i = 0; i < n; ++i) {
                out = apply_dephasing(g.params, out);
            }
            return out;
        }
        DensityMatrix operator()(const AveragedPhaseGate& g) const {
            if (!g.fresh_error_per_application) {
                return averaged_output(g.params, g.error, rho, n);
            }
            DensityMatrix out = rho;
            for (int i = 0; i < n; ++i) {
                out = averaged_output(g.params, g.error, out, 1);
            }
            return out;
        }
    };
    return std::visit(Visitor{rho, n}, channel);
}

CompiledChannel CompiledChannel::unitary(const Mat2& u) {
    CompiledChannel c;
    c.is_unitary_ = true;
    c.u_ = u;
    return c;
}

CompiledChannel CompiledChannel::coherence(Complex factor) {
    CompiledChannel c;
    c.is_unitary_ = false;
    c.factor_ = factor;
    return c;
}

DensityMatrix CompiledChannel::apply(const DensityMatrix& rho) const {
    if (is_unitary_) {
        return conjugate(u_, rho);
    }
    Mat2 m = rho.matrix();
    m(0, 1) *= factor_;
    m(1, 0) = std::conj(m(0, 1));
    return DensityMatrix(m, DensityMatrix::Unchecked{});
}

}  // namespace qfunc
