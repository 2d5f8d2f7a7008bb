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

#include "qfunc/qstate.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfunc/errors.h"

namespace qfunc {

namespace {

double hermiticity_error(const Mat2& m) {
    return std::max({std::abs(m(0, 1) - std::conj(m(1, 0))), std::abs(m(0, 0).imag()),
                     std::abs(m(1, 1).imag())});
}

// Coefficients of m = a0 I + a.sigma for Hermitian m.
void pauli_coefficients(const Mat2& m, double& a0, Vec3& a) {
    a0 = 0.5 * (m(0, 0).real() + m(1, 1).real());
    a = Vec3(m(0, 1).real() + m(1, 0).real(), m(1, 0).imag() - m(0, 1).imag(),
             m(0, 0).real() - m(1, 1).real()) *
        0.5;
}

}  // namespace

Mat2 pauli_dot(const Vec3& n) {
    Mat2 m;
    m << Complex(n.z(), 0.0), Complex(n.x(), -n.y()), Complex(n.x(), n.y()), Complex(-n.z(), 0.0);
    return m;
}

BlochVector::BlochVector(const Vec3& r) : r_(r) {
    if (!(r.norm() <= 1.0 + kStateTolerance)) {
        std::ostringstream msg;
        msg << "Bloch vector norm " << r.norm() << " exceeds 1";
        throw InvalidState(msg.str());
    }
}

BlochVector BlochVector::from_angles(double alpha, double beta) {
    return BlochVector(Vec3(std::sin(alpha) * std::cos(beta), std::sin(alpha) * std::sin(beta),
                            std::cos(alpha)));
}

Mat2 HermitianSpectrum::projector(int index) const {
    double sign = index == 0 ? 1.0 : -1.0;
    return 0.5 * (pauli::kIdentity + sign * pauli_dot(axis));
}

HermitianSpectrum hermitian_spectrum(const Mat2& m) {
    if (hermiticity_error(m) > kStateTolerance) {
        throw InvalidState("matrix is not Hermitian");
    }
    double a0;
    Vec3 a;
    pauli_coefficients(m, a0, a);
    double len = a.norm();
    HermitianSpectrum s;
    s.eigenvalues = {a0 + len, a0 - len};
    s.axis = len > 0.0 ? Vec3(a / len) : Vec3(0.0, 0.0, 1.0);
    return s;
}

std::string density_matrix_violation(const Mat2& m, double tol) {
    if (!m.allFinite()) {
        return "non-finite entries";
    }
    if (hermiticity_error(m) > tol) {
        return "not Hermitian";
    }
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol) {
        return "trace differs from 1";
    }
    auto spec = hermitian_spectrum(m);
    if (spec.eigenvalues[1] < -tol) {
        return "negative eigenvalue";
    }
    return "";
}

DensityMatrix::DensityMatrix() : m_(0.5 * pauli::kIdentity) {}

DensityMatrix::DensityMatrix(const Mat2& m) : m_(m) {
    auto why = density_matrix_violation(m);
    if (!why.empty()) {
        throw InvalidState("invalid density matrix: " + why);
    }
}

DensityMatrix DensityMatrix::pure(double alpha, double beta) {
    return bloch_to_density(BlochVector::from_angles(alpha, beta));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

BlochVector DensityMatrix::bloch() const { return density_to_bloch(*this); }

HermitianSpectrum DensityMatrix::spectrum() const {
    auto s = hermitian_spectrum(m_);
    for (auto& l : s.eigenvalues) {
        if (std::abs(l) < kEigenvalueSnap || l < 0.0) {
            l = 0.0;
        }
    }
    return s;
}

double eigenvalue_power(double lambda, double p) {
    if (lambda <= 0.0) {
        return 0.0;
    }
    return std::pow(lambda, p);
}

Mat2 DensityMatrix::power(double p) const {
    return spectrum().apply([p](double l) { return eigenvalue_power(l, p); });
}

DensityMatrix bloch_to_density(const BlochVector& r) {
    return DensityMatrix(0.5 * (pauli::kIdentity + pauli_dot(r.vector())), DensityMatrix::Unchecked{});
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
    double a0;
    Vec3 a;
    pauli_coefficients(rho.matrix(), a0, a);
    Vec3 r = 2.0 * a;
    // Channel outputs may drift past |r| = 1 by rounding.
    double n = r.norm();
    if (n > 1.0 && n <= 1.0 + kStateTolerance) {
        r /= n;
    }
    return BlochVector(r);
}

BlochVector density_to_bloch(const Mat2& m) {
    auto why = density_matrix_violation(m);
    if (!why.empty()) {
        throw InvalidState("invalid density matrix: " + why);
    }
    return density_to_bloch(DensityMatrix(m, DensityMatrix::Unchecked{}));
}

PovmElement::PovmElement(const Mat2& m, std::string label) : m_(m), label_(std::move(label)) {
    auto spec = hermitian_spectrum(m);
    if (spec.eigenvalues[1] < -kStateTolerance || spec.eigenvalues[0] > 1.0 + kStateTolerance) {
        throw InvalidState("POVM element eigenvalues must lie in [0, 1]");
    }
    kraus_ = spec.apply([](double l) { return std::sqrt(std::clamp(l, 0.0, 1.0)); });
}

PovmElement PovmElement::projector(const Vec3& n, std::string label) {
    if (std::abs(n.norm() - 1.0) > kPureTolerance) {
        throw InvalidParameter("projector axis must be a unit vector");
    }
    return PovmElement(0.5 * (pauli::kIdentity + pauli_dot(n.normalized())), std::move(label));
}

PovmElement PovmElement::complement(std::string label) const {
    return PovmElement(pauli::kIdentity - m_, std::move(label));
}

double born_probability(const PovmElement& e, const DensityMatrix& rho) {
    double p = (e.matrix() * rho.matrix()).trace().real();
    return std::clamp(p, 0.0, 1.0);
}

MeasurementResult measurement_update(const PovmElement& e, const DensityMatrix& rho) {
    double p = born_probability(e, rho);
    if (p <= kMinOutcomeProbability) {
        throw ZeroProbabilityOutcome("outcome '" + e.label() + "' has zero probability");
    }
    const Mat2& k = e.kraus();
    Mat2 post = k * rho.matrix() * k.adjoint() / p;
    // Restore exact Hermiticity after the division.
    post = 0.5 * (post + post.adjoint()).eval();
    return {p, DensityMatrix(post, DensityMatrix::Unchecked{})};
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    return 0.5 * (a.bloch().vector() - b.bloch().vector()).norm();
}

}  // namespace qfunc
