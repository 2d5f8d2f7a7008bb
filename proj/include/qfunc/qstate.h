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

#ifndef QFUNC_QSTATE_H
#define QFUNC_QSTATE_H

#include <array>
#include <complex>
#include <string>

#include <Eigen/Dense>

namespace qfunc {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;

/// Entrywise tolerance for Hermiticity, unit trace and eigenvalue sign.
inline constexpr double kStateTolerance = 1e-12;
/// Tolerance on sums of outcome probabilities.
inline constexpr double kProbabilityTolerance = 1e-9;
/// |r| within this of 1 counts as a pure state.
inline constexpr double kPureTolerance = 1e-9;
/// Outcomes at or below this probability have no post-measurement state.
inline constexpr double kMinOutcomeProbability = 1e-15;
/// Eigenvalues with magnitude below this are treated as exact zeros before
/// fractional powers are taken.
inline constexpr double kEigenvalueSnap = 1e-13;

namespace pauli {
inline const Mat2 kIdentity = Mat2::Identity();
inline const Mat2 kX = (Mat2() << 0.0, 1.0, 1.0, 0.0).finished();
inline const Mat2 kY = (Mat2() << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0).finished();
inline const Mat2 kZ = (Mat2() << 1.0, 0.0, 0.0, -1.0).finished();
}  // namespace pauli

/// n . sigma for a real 3-vector.
Mat2 pauli_dot(const Vec3& n);

/// Bloch vector of a qubit state, |r| <= 1.
class BlochVector {
   public:
    BlochVector() = default;
    /// Throws InvalidState when |r| > 1 + kStateTolerance.
    explicit BlochVector(const Vec3& r);
    BlochVector(double x, double y, double z) : BlochVector(Vec3(x, y, z)) {}

    /// Pure state r = (sin a cos b, sin a sin b, cos a).
    static BlochVector from_angles(double alpha, double beta);

    const Vec3& vector() const { return r_; }
    double x() const { return r_.x(); }
    double y() const { return r_.y(); }
    double z() const { return r_.z(); }
    double norm() const { return r_.norm(); }
    bool is_pure() const { return std::abs(norm() - 1.0) <= kPureTolerance; }

   private:
    Vec3 r_ = Vec3::Zero();
};

/// Eigen-decomposition of a 2x2 Hermitian matrix a0 I + a.sigma:
/// eigenvalues a0 +- |a| with projectors (I +- a_hat.sigma)/2.
struct HermitianSpectrum {
    /// {larger, smaller}.
    std::array<double, 2> eigenvalues;
    /// Unit vector of the larger eigenvalue's eigenprojector (e_z when degenerate).
    Vec3 axis;

    Mat2 projector(int index) const;
    /// sum_i f(lambda_i) P_i.
    template <typename F>
    Mat2 apply(F&& f) const {
        return f(eigenvalues[0]) * projector(0) + f(eigenvalues[1]) * projector(1);
    }
};

/// Requires a Hermitian matrix (within kStateTolerance); throws InvalidState otherwise.
HermitianSpectrum hermitian_spectrum(const Mat2& m);

/// 2x2 Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
   public:
    struct Unchecked {};

    /// Maximally mixed state.
    DensityMatrix();
    /// Validates the invariants; throws InvalidState.
    explicit DensityMatrix(const Mat2& m);
    /// Skips validation. For channel outputs that preserve the invariants by construction.
    DensityMatrix(const Mat2& m, Unchecked) : m_(m) {}

    static DensityMatrix maximally_mixed() { return DensityMatrix(); }
    /// |psi> = cos(a/2)|0> + e^{ib} sin(a/2)|1>.
    static DensityMatrix pure(double alpha, double beta);
    static DensityMatrix plus() { return pure(M_PI / 2, 0.0); }

    const Mat2& matrix() const { return m_; }
    Complex operator()(int r, int c) const { return m_(r, c); }
    double purity() const;
    BlochVector bloch() const;
    bool is_pure() const { return bloch().is_pure(); }

    /// Eigenvalues with |lambda| < kEigenvalueSnap set to exactly zero.
    HermitianSpectrum spectrum() const;
    /// rho^p with the convention 0^p = 0 for every p (including p = 0).
    Mat2 power(double p) const;

   private:
    Mat2 m_;
};

/// lambda^p for a clamped eigenvalue, with 0^p := 0.
double eigenvalue_power(double lambda, double p);

/// Checks Hermiticity, unit trace and eigenvalues >= -tol. Returns a message or "".
std::string density_matrix_violation(const Mat2& m, double tol = kStateTolerance);

DensityMatrix bloch_to_density(const BlochVector& r);
BlochVector density_to_bloch(const DensityMatrix& rho);
/// Raw-matrix overload; throws InvalidState on non-Hermitian or invalid input.
BlochVector density_to_bloch(const Mat2& m);

/// Element of a two-outcome POVM.
class PovmElement {
   public:
    /// Throws InvalidState unless Hermitian with eigenvalues in [0, 1].
    PovmElement(const Mat2& m, std::string label);

    /// (I + n.sigma)/2 for a unit vector n.
    static PovmElement projector(const Vec3& n, std::string label);
    /// I - E.
    PovmElement complement(std::string label) const;

    const Mat2& matrix() const { return m_; }
    const std::string& label() const { return label_; }
    /// Kraus operator sqrt(E); equals E for a projector.
    const Mat2& kraus() const { return kraus_; }

   private:
    Mat2 m_;
    Mat2 kraus_;
    std::string label_;
};

/// tr(E rho) clamped to [0, 1].
double born_probability(const PovmElement& e, const DensityMatrix& rho);

struct MeasurementResult {
    double probability;
    DensityMatrix state;
};

/// (p, M rho M^dagger / p) with M = sqrt(E). Throws ZeroProbabilityOutcome when p <= 1e-15.
MeasurementResult measurement_update(const PovmElement& e, const DensityMatrix& rho);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qfunc

#endif
