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

#ifndef QFUNC_CERTIFY_H
#define QFUNC_CERTIFY_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qfunc/actions.h"
#include "qfunc/design.h"
#include "qfunc/smc.h"

namespace qfunc {

/// Producer's interval [center - half_width, center + half_width], closed.
struct Spec {
    double center = 0.0;
    double half_width = 0.0;

    void validate() const;
    double lo() const { return center - half_width; }
    double hi() const { return center + half_width; }
    bool contains(double x) const { return x >= lo() && x <= hi(); }
};

enum class Decision { Accept, Reject, Inconclusive };
enum class Criterion { Mean, Hpd };
/// How "fraction of the HPD region inside the spec" is measured.
enum class HpdMeasure { Weight, IntervalLength };

std::string_view to_string(Decision d);
std::string_view to_string(Criterion c);
Criterion parse_criterion(std::string_view text);

struct HpdOptions {
    double credibility = 0.95;
    double threshold = 0.95;
    HpdMeasure measure = HpdMeasure::Weight;

    void validate() const;
};

/// Accept iff the posterior mean lies in the spec.
Decision decide_mean(const ParticleFilter& f, const Spec& spec);

/// Accept if at least `threshold` of the HPD region lies inside the spec,
/// Reject if at least `threshold` lies outside, otherwise Inconclusive.
/// With IntervalLength the region is replaced by [min, max] of its locations.
Decision decide_hpd(const ParticleFilter& f, const Spec& spec, const HpdOptions& options = {});

Decision decide(const ParticleFilter& f, const Spec& spec, Criterion criterion,
                const HpdOptions& options = {});

enum class ModelKind { PhaseGate, Dephasing };

std::string_view to_string(ModelKind m);
ModelKind parse_model(std::string_view text);

/// Everything a protocol run needs except the spec and decision rule.
struct ProtocolConfig {
    ModelKind model = ModelKind::PhaseGate;
    double x_true = 0.0;
    /// Defaults to [-pi, pi] for the phase gate and [0, 1] for dephasing.
    std::optional<Support> prior;
    int n_particles = 2000;
    /// Total action budget; N0 / m design-update rounds.
    int n0 = 300;
    int m = 1;
    UtilityKind utility = UtilityKind::MI;
    /// Dephasing only: precession frequency and time per channel application.
    double omega = 0.0;
    double t = 5.0;
    std::vector<Action> action_set = {Action::MeasureX, Action::MeasureY, Action::Identity};
    ResamplerOptions resampler;
    InitSampling init = InitSampling::Stratified;
    /// Action counts (multiples of m, at most n0) at which to record posterior moments.
    std::vector<int> checkpoints;

    /// Throws InvalidParameter on any violated precondition.
    void validate() const;
    Support support() const;
    LikelihoodModel likelihood_model() const;
    int rounds() const { return n0 / m; }
};

struct Checkpoint {
    int actions;
    double mean;
    double variance;
};

struct ProtocolRun {
    /// Empty when the run was aborted.
    std::optional<ParticleFilter> filter;
    std::vector<ActionSequence> chosen;
    std::vector<Checkpoint> checkpoints;
    bool impoverished = false;
};

/// N0/m rounds of: pick the best sequence, run the simulated device through it
/// from rho_in, update the filter with the observed record.
ProtocolRun run_protocol(const ProtocolConfig& cfg, std::uint64_t seed);

struct CertificationConfig {
    ProtocolConfig protocol;
    Spec spec;
    Criterion criterion = Criterion::Mean;
    HpdOptions hpd;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrialRecord {
    Decision decision = Decision::Inconclusive;
    double posterior_mean = 0.0;
    double posterior_variance = 0.0;
    std::vector<ActionSequence> chosen;
    bool in_spec = false;
    bool success = false;
    bool impoverished = false;
};

/// Impoverished runs come back Inconclusive with success = false.
TrialRecord evaluate_run(const ProtocolRun& run, double x_true, const Spec& spec, Criterion criterion,
                         const HpdOptions& hpd = {});
TrialRecord run_trial(const CertificationConfig& cfg);

struct SuccessEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    int trials = 0;
};

/// Trial i uses seed derive_seed(master_seed, i).
SuccessEstimate success_probability(const CertificationConfig& cfg, int n_trials, std::uint64_t master_seed,
                                    unsigned threads = 1);

struct SweepPoint {
    Spec spec;
    Criterion criterion = Criterion::Mean;
};

/// Spec and criterion only enter after the run, so one set of protocol runs
/// serves every sweep point. Matches success_probability point by point.
/// `runs`, if given, receives every protocol run in trial order.
std::vector<SuccessEstimate> success_curve(const ProtocolConfig& cfg, std::span<const SweepPoint> points,
                                           const HpdOptions& hpd, int n_trials, std::uint64_t master_seed,
                                           unsigned threads = 1, std::vector<ProtocolRun>* runs = nullptr);

}  // namespace qfunc

#endif
