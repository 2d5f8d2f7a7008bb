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

#include "qfunc/smc.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qfunc/errors.h"

namespace qfunc {

namespace {

constexpr double kWeightTolerance = 1e-10;
constexpr double kUnderflow = 1e-300;

}  // namespace

void Support::validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw InvalidParameter("prior support needs finite lo < hi");
    }
}

ParticleFilter::ParticleFilter(std::vector<double> locations, std::vector<double> weights, Support support,
                               std::uint64_t seed)
    : locations_(std::move(locations)), weights_(std::move(weights)), support_(support), rng_(seed) {
    support_.validate();
    validate();
}

void ParticleFilter::set_weights(std::vector<double> weights) {
    weights_ = std::move(weights);
    validate();
}

void ParticleFilter::set_particles(std::vector<double> locations, std::vector<double> weights) {
    locations_ = std::move(locations);
    weights_ = std::move(weights);
    validate();
}

void ParticleFilter::validate() const {
    if (locations_.size() < 2 || locations_.size() != weights_.size()) {
        throw InvalidArgument("particle filter needs >= 2 particles with one weight each");
    }
    double total = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) {
            throw InvalidArgument("particle weights must be non-negative");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > kWeightTolerance) {
        throw InvalidArgument("particle weights must sum to 1");
    }
    for (double x : locations_) {
        if (!support_.contains(x)) {
            throw InvalidArgument("particle location outside the prior support");
        }
    }
}

ParticleFilter init_uniform(const Support& support, int n_particles, std::uint64_t seed,
                            InitSampling sampling) {
    support.validate();
    if (n_particles < 2) {
        throw InvalidParameter("need at least two particles");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> loc(n_particles);
    const double width = support.width();
    for (int i = 0; i < n_particles; ++i) {
        double cell = sampling == InitSampling::Stratified ? (i + u(rng)) / n_particles : u(rng);
        loc[i] = std::min(support.hi, support.lo + width * cell);
    }
    std::vector<double> w(n_particles, 1.0 / n_particles);
    // Filter stream continues from the init draws.
    return ParticleFilter(std::move(loc), std::move(w), support, rng());
}

LikelihoodModel::LikelihoodModel(Kind kind, const DensityMatrix& rho_in, const Axis& axis, double omega,
                                 double t)
    : kind_(kind), rho_in_(rho_in), axis_(axis), omega_(omega), t_(t) {}

LikelihoodModel LikelihoodModel::phase_gate(const DensityMatrix& rho_in, const Axis& axis) {
    return LikelihoodModel(Kind::PhaseGate, rho_in, axis, 0.0, 0.0);
}

LikelihoodModel LikelihoodModel::dephasing(double omega, double t, const DensityMatrix& rho_in) {
    if (!std::isfinite(omega) || !(t > 0.0)) {
        throw InvalidParameter("dephasing model needs finite omega and t > 0");
    }
    return LikelihoodModel(Kind::Dephasing, rho_in, Axis::z(), omega, t);
}

Support LikelihoodModel::default_support() const {
    if (kind_ == Kind::PhaseGate) {
        return {-M_PI, M_PI};
    }
    return {0.0, 1.0};
}

Channel LikelihoodModel::channel_at(double x) const {
    if (kind_ == Kind::PhaseGate) {
        return PhaseGate{PhaseGateParams{x, axis_}};
    }
    return DephasingGate{DephasingParams{omega_, x, t_}};
}

CompiledChannel LikelihoodModel::compile(double x) const {
    if (kind_ == Kind::PhaseGate) {
        return CompiledChannel::unitary(rotation_unitary(axis_, x));
    }
    if (!(x >= 0.0)) {
        throw InvalidParameter("dephasing rate must be non-negative");
    }
    return CompiledChannel::coherence(std::exp(Complex(-x * t_, -omega_ * t_)));
}

double LikelihoodModel::sequence_likelihood(double x, const ActionSequence& seq,
                                            const OutcomeSequence& outcomes) const {
    if (static_cast<int>(outcomes.size()) != measurement_count(seq)) {
        throw InvalidArgument("outcome record does not match the number of measurements");
    }
    CompiledChannel channel = compile(x);
    DensityMatrix state = rho_in_;
    double prob = 1.0;
    std::size_t next = 0;
    for (Action a : seq) {
        state = channel.apply(state);
        if (!is_measurement(a)) {
            continue;
        }
        const PovmElement& e = povm_element(a, outcomes[next++]);
        double p = born_probability(e, state);
        if (p <= kMinOutcomeProbability) {
            return 0.0;
        }
        prob *= p;
        state = measurement_update(e, state).state;
    }
    return prob;
}

std::vector<double> LikelihoodModel::branch_likelihoods(double x, const ActionSequence& seq) const {
    CompiledChannel channel = compile(x);
    std::vector<DensityMatrix> states{rho_in_};
    std::vector<double> probs{1.0};
    for (Action a : seq) {
        for (auto& s : states) {
            s = channel.apply(s);
        }
        if (!is_measurement(a)) {
            continue;
        }
        std::vector<DensityMatrix> next_states;
        std::vector<double> next_probs;
        next_states.reserve(2 * states.size());
        next_probs.reserve(2 * states.size());
        for (std::size_t b = 0; b < states.size(); ++b) {
            for (Outcome o : {Outcome::Plus, Outcome::Minus}) {
                const PovmElement& e = povm_element(a, o);
                double p = born_probability(e, states[b]);
                if (probs[b] == 0.0 || p <= kMinOutcomeProbability) {
                    next_probs.push_back(0.0);
                    next_states.push_back(states[b]);
                } else {
                    next_probs.push_back(probs[b] * p);
                    next_states.push_back(measurement_update(e, states[b]).state);
                }
            }
        }
        states = std::move(next_states);
        probs = std::move(next_probs);
    }
    return probs;
}

OutcomeSequence LikelihoodModel::sample_outcomes(double x, const ActionSequence& seq,
                                                 std::mt19937_64& rng) const {
    CompiledChannel channel = compile(x);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    DensityMatrix state = rho_in_;
    OutcomeSequence out;
    for (Action a : seq) {
        state = channel.apply(state);
        if (!is_measurement(a)) {
            continue;
        }
        double p_plus = born_probability(povm_element(a, Outcome::Plus), state);
        Outcome o = u(rng) < p_plus ? Outcome::Plus : Outcome::Minus;
        out.push_back(o);
        state = measurement_update(povm_element(a, o), state).state;
    }
    return out;
}

void ResamplerOptions::validate() const {
    if (!(a > 0.0 && a <= 1.0)) {
        throw InvalidParameter("Liu-West a must lie in (0, 1]");
    }
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw InvalidParameter("resampling threshold must lie in [0, 1]");
    }
}

double effective_sample_size(const ParticleFilter& f) {
    double s = 0.0;
    for (double w : f.weights()) {
        s += w * w;
    }
    return 1.0 / s;
}

double posterior_mean(const ParticleFilter& f) {
    const auto& x = f.locations();
    const auto& w = f.weights();
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        m += w[i] * x[i];
    }
    return m;
}

double posterior_variance(const ParticleFilter& f) {
    const auto& x = f.locations();
    const auto& w = f.weights();
    double m = posterior_mean(f);
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - m;
        v += w[i] * d * d;
    }
    return v;
}

ParticleFilter reweight(ParticleFilter f, std::span<const double> likelihoods) {
    if (likelihoods.size() != f.size()) {
        throw InvalidArgument("one likelihood per particle required");
    }
    std::vector<double> w = f.weights();
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] *= likelihoods[i];
        total += w[i];
    }
    if (!(total > kUnderflow)) {
        throw Impoverishment("total likelihood underflow in Bayes update");
    }
    for (double& wi : w) {
        wi /= total;
    }
    f.set_weights(std::move(w));
    return f;
}

ParticleFilter resample(ParticleFilter f, const ResamplerOptions& options) {
    options.validate();
    const std::size_t n = f.size();
    const auto& x = f.locations();
    const auto& w = f.weights();
    double mu = posterior_mean(f);
    double var = posterior_variance(f);
    double sd = var > 0.0 ? std::sqrt((1.0 - options.a * options.a) * var) : 0.0;
    double shrink = var > 0.0 ? options.a : 1.0;

    std::vector<double> cumulative(n);
    std::partial_sum(w.begin(), w.end(), cumulative.begin());
    auto& rng = f.rng();
    std::uniform_real_distribution<double> u(0.0, cumulative.back());
    std::normal_distribution<double> noise(0.0, 1.0);
    const Support& s = f.support();

    std::vector<double> loc(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u(rng));
        std::size_t j = std::min<std::size_t>(it - cumulative.begin(), n - 1);
        // upper_bound can land on a zero-weight particle at a float boundary.
        while (w[j] == 0.0 && j > 0) {
            --j;
        }
        double xi = shrink * x[j] + (1.0 - shrink) * mu;
        if (sd > 0.0) {
            xi += sd * noise(rng);
        }
        loc[i] = std::clamp(xi, s.lo, s.hi);
    }
    f.set_particles(std::move(loc), std::vector<double>(n, 1.0 / n));
    return f;
}

ParticleFilter batch_update(ParticleFilter f, const LikelihoodModel& model, const ActionSequence& seq,
                            const OutcomeSequence& outcomes, const ResamplerOptions& options) {
    if (static_cast<int>(outcomes.size()) != measurement_count(seq)) {
        throw InvalidArgument("outcome record does not match the number of measurements");
    }
    std::vector<double> lik(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        lik[i] = model.sequence_likelihood(f.locations()[i], seq, outcomes);
    }
    f = reweight(std::move(f), lik);
    if (effective_sample_size(f) < options.threshold * static_cast<double>(f.size())) {
        f = resample(std::move(f), options);
    }
    return f;
}

std::vector<std::size_t> hpd_region(const ParticleFilter& f, double credibility) {
    if (!(credibility > 0.0 && credibility < 1.0)) {
        throw InvalidParameter("credibility must lie in (0, 1)");
    }
    const auto& x = f.locations();
    const auto& w = f.weights();
    std::vector<std::size_t> order(f.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (w[a] != w[b]) {
            return w[a] > w[b];
        }
        if (x[a] != x[b]) {
            return x[a] < x[b];
        }
        return a < b;
    });
    double cumulative = 0.0;
    std::size_t count = 0;
    // The slack absorbs rounding in sums like 95 * 0.01.
    while (count < order.size() && cumulative < credibility - 1e-12) {
        cumulative += w[order[count]];
        ++count;
    }
    order.resize(count);
    return order;
}

}  // namespace qfunc
