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

#ifndef QFUNC_SMC_H
#define QFUNC_SMC_H

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "qfunc/actions.h"
#include "qfunc/channels.h"
#include "qfunc/qstate.h"

namespace qfunc {

/// Closed prior interval [lo, hi].
struct Support {
    double lo = 0.0;
    double hi = 1.0;

    void validate() const;
    bool contains(double x) const { return x >= lo && x <= hi; }
    double width() const { return hi - lo; }
};

/// Weighted particle approximation of a scalar posterior, with its own RNG
/// stream for resampling. Copying a filter copies the stream state.
class ParticleFilter {
   public:
    /// Validates equal lengths >= 2, weights >= 0 summing to 1 within 1e-10,
    /// and locations inside the support.
    ParticleFilter(std::vector<double> locations, std::vector<double> weights, Support support,
                   std::uint64_t seed);

    std::size_t size() const { return locations_.size(); }
    const std::vector<double>& locations() const { return locations_; }
    const std::vector<double>& weights() const { return weights_; }
    const Support& support() const { return support_; }
    std::mt19937_64& rng() { return rng_; }

    /// Replaces the weights; same validation as the constructor.
    void set_weights(std::vector<double> weights);
    /// Replaces both arrays; same validation as the constructor.
    void set_particles(std::vector<double> locations, std::vector<double> weights);

   private:
    void validate() const;

    std::vector<double> locations_;
    std::vector<double> weights_;
    Support support_;
    std::mt19937_64 rng_;
};

/// Stratified puts one uniform draw in each of n equal-width cells of the
/// support (then shuffles); Iid draws every location independently.
enum class InitSampling { Stratified, Iid };

ParticleFilter init_uniform(const Support& support, int n_particles, std::uint64_t seed,
                            InitSampling sampling = InitSampling::Stratified);

/// Born-rule likelihood of outcome records for a parametrized qubit channel.
///
/// Each action is preceded by one channel application. Measurements collapse
/// the state; identities only let the channel act again.
class LikelihoodModel {
   public:
    enum class Kind { PhaseGate, Dephasing };

    /// Parameter is the rotation angle theta about `axis`.
    static LikelihoodModel phase_gate(const DensityMatrix& rho_in = DensityMatrix::plus(),
                                      const Axis& axis = Axis::z());
    /// Parameter is the decay rate gamma; each application evolves for time t.
    static LikelihoodModel dephasing(double omega, double t,
                                     const DensityMatrix& rho_in = DensityMatrix::plus());

    Kind kind() const { return kind_; }
    const DensityMatrix& input_state() const { return rho_in_; }
    double omega() const { return omega_; }
    double t() const { return t_; }

    /// Prior used by the protocol when none is configured.
    Support default_support() const;

    Channel channel_at(double x) const;
    CompiledChannel compile(double x) const;

    /// Throws InvalidArgument unless outcomes has one entry per measurement.
    double sequence_likelihood(double x, const ActionSequence& seq, const OutcomeSequence& outcomes) const;
    /// Probabilities of all outcome records, in enumerate_outcomes order.
    std::vector<double> branch_likelihoods(double x, const ActionSequence& seq) const;

    /// Runs the device with parameter x through seq from rho_in and samples outcomes.
    OutcomeSequence sample_outcomes(double x, const ActionSequence& seq, std::mt19937_64& rng) const;

   private:
    LikelihoodModel(Kind kind, const DensityMatrix& rho_in, const Axis& axis, double omega, double t);

    Kind kind_;
    DensityMatrix rho_in_;
    Axis axis_;
    double omega_;
    double t_;
};

struct ResamplerOptions {
    /// Liu-West shrinkage.
    double a = 0.98;
    /// Resample when ESS < threshold * n.
    double threshold = 0.5;

    void validate() const;
};

/// 1 / sum w^2.
double effective_sample_size(const ParticleFilter& f);
double posterior_mean(const ParticleFilter& f);
double posterior_variance(const ParticleFilter& f);

/// w_i <- w_i L_i / sum_j w_j L_j. Throws Impoverishment when the sum is <= 1e-300.
ParticleFilter reweight(ParticleFilter f, std::span<const double> likelihoods);

/// Liu-West resampling: x'_i = a x_j + (1 - a) mu + N(0, (1 - a^2) var),
/// j drawn in proportion to w, clipped to the support, equal weights.
ParticleFilter resample(ParticleFilter f, const ResamplerOptions& options = {});

/// Bayes update with a whole batch record, then resampling if the ESS dropped
/// below the threshold.
ParticleFilter batch_update(ParticleFilter f, const LikelihoodModel& model, const ActionSequence& seq,
                            const OutcomeSequence& outcomes, const ResamplerOptions& options = {});

/// Indices of the smallest weight-descending prefix (ties by location
/// ascending) whose cumulative weight reaches `credibility`.
std::vector<std::size_t> hpd_region(const ParticleFilter& f, double credibility = 0.95);

}  // namespace qfunc

#endif
