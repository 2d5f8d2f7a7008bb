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

#ifndef QFUNC_CHANNELS_H
#define QFUNC_CHANNELS_H

#include <variant>

#include "qfunc/qstate.h"

namespace qfunc {

/// Unit rotation axis. Construction accepts vectors within 1e-9 of unit
/// length and normalizes them; anything else is an InvalidParameter.
class Axis {
   public:
    explicit Axis(const Vec3& n);
    static Axis x() { return Axis(Vec3::UnitX()); }
    static Axis y() { return Axis(Vec3::UnitY()); }
    static Axis z() { return Axis(Vec3::UnitZ()); }
    const Vec3& vector() const { return n_; }

   private:
    Vec3 n_;
};

/// exp(-i theta/2 n.sigma) = cos(theta/2) I - i sin(theta/2) n.sigma.
Mat2 rotation_unitary(const Axis& axis, double theta);
/// Validating overload for a raw vector.
Mat2 rotation_unitary(const Vec3& axis, double theta);

/// Angle reduced to (-pi, pi].
double wrap_angle(double theta);

struct PhaseGateParams {
    double theta = 0.0;
    Axis axis = Axis::z();

    double reported_theta() const { return wrap_angle(theta); }
};

/// Evolution under (omega/2) sigma_z for time t with coherence decay exp(-gamma t).
struct DephasingParams {
    double omega = 0.0;
    double gamma = 0.0;
    double t = 0.0;

    /// Throws InvalidParameter for gamma < 0 or t < 0.
    void validate() const;
};

/// Distribution of the additive angle error: a fixed offset, or uniform on [0, w].
struct ErrorDistribution {
    enum class Kind { Deterministic, Uniform };

    Kind kind = Kind::Deterministic;
    double offset = 0.0;
    double width = 0.0;
    int quadrature_nodes = 64;

    static ErrorDistribution deterministic(double offset) {
        return {Kind::Deterministic, offset, 0.0, 1};
    }
    static ErrorDistribution uniform(double width, int nodes = 64) {
        return {Kind::Uniform, 0.0, width, nodes};
    }
    void validate() const;
};

/// R rho R^dagger.
DensityMatrix apply_phase_gate(const PhaseGateParams& p, const DensityMatrix& rho);

/// Output for the pure input parametrized by (alpha, beta):
/// diag(cos^2(a/2), sin^2(a/2)), coherence (sin a / 2) exp(-gamma t -+ i(omega t + beta)).
DensityMatrix apply_dephasing(const DephasingParams& p, double alpha, double beta);
/// Linear extension to arbitrary inputs: rho_01 -> rho_01 exp(-gamma t - i omega t).
DensityMatrix apply_dephasing(const DephasingParams& p, const DensityMatrix& rho);

/// Mixture over the error distribution of the n-fold gate with angle n(theta + eps).
/// Uniform errors are integrated with Gauss-Legendre quadrature on [0, w].
DensityMatrix averaged_output(const PhaseGateParams& p, const ErrorDistribution& d,
                              const DensityMatrix& rho, int n = 1);

struct PhaseGate {
    PhaseGateParams params;
};

struct DephasingGate {
    DephasingParams params;
};

/// Phase gate with a random angle error. By default one error realization is
/// shared by all iterations of a run; with fresh_error_per_application each
/// application draws its own.
struct AveragedPhaseGate {
    PhaseGateParams params;
    ErrorDistribution error;
    bool fresh_error_per_application = false;
};

using Channel = std::variant<PhaseGate, DephasingGate, AveragedPhaseGate>;

DensityMatrix apply_channel(const Channel& channel, const DensityMatrix& rho);

/// n-fold composition. Throws InvalidParameter for n < 1.
DensityMatrix iterate_channel(const Channel& channel, const DensityMatrix& rho, int n);

/// A channel with parameters fixed, reduced to the arithmetic needed to apply
/// it repeatedly: a unitary conjugation or a coherence multiplier.
class CompiledChannel {
   public:
    static CompiledChannel unitary(const Mat2& u);
    /// rho_01 -> rho_01 * factor.
    static CompiledChannel coherence(Complex factor);

    DensityMatrix apply(const DensityMatrix& rho) const;

   private:
    bool is_unitary_ = true;
    Mat2 u_ = Mat2::Identity();
    Complex factor_ = 1.0;
};

}  // namespace qfunc

#endif
