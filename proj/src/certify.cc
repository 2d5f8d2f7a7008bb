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

#include "qfunc/certify.h"

#include <algorithm>
#include <cmath>

#include "qfunc/errors.h"
#include "qfunc/numerics.h"

namespace qfunc {

void Spec::validate() const {
    if (!std::isfinite(center) || !(half_width > 0.0) || !std::isfinite(half_width)) {
        throw InvalidParameter("spec needs a finite center and a positive half-width");
    }
}

std::string_view to_string(Decision d) {
    switch (d) {
        case Decision::Accept:
            return "accept";
        case Decision::Reject:
            return "reject";
        case Decision::Inconclusive:
            break;
    }
    return "inconclusive";
}

std::string_view to_string(Criterion c) { return c == Criterion::Mean ? "MEAN" : "HPD"; }

Criterion parse_criterion(std::string_view text) {
    if (text == "MEAN" || text == "mean") {
        return Criterion::Mean;
    }
    if (text == "HPD" || text == "hpd") {
        return Criterion::Hpd;
    }
    throw InvalidArgument("unknown criterion '" + std::string(text) + "' (expected MEAN or HPD)");
}

std::string_view to_string(ModelKind m) { return m == ModelKind::PhaseGate ? "phase_gate" : "dephasing"; }

ModelKind parse_model(std::string_view text) {
    if (text == "phase_gate") {
        return ModelKind::PhaseGate;
    }
    if (text == "dephasing") {
        return ModelKind::Dephasing;
    }
    throw InvalidArgument("unknown model '" + std::string(text) + "' (expected phase_gate or dephasing)");
}

void HpdOptions::validate() const {
    if (!(credibility > 0.0 && credibility < 1.0)) {
        throw InvalidParameter("HPD credibility must lie in (0, 1)");
    }
    // Above one half, Accept and Reject cannot both hold.
    if (!(threshold > 0.5 && threshold <= 1.0)) {
        throw InvalidParameter("HPD threshold must lie in (0.5, 1]");
    }
}

Decision decide_mean(const ParticleFilter& f, const Spec& spec) {
    return spec.contains(posterior_mean(f)) ? Decision::Accept : Decision::Reject;
}

Decision decide_hpd(const ParticleFilter& f, const Spec& spec, const HpdOptions& options) {
    options.validate();
    auto region = hpd_region(f, options.credibility);
    const auto& x = f.locations();
    const auto& w = f.weights();
    double inside = 0.0;
    double outside = 0.0;
    if (options.measure == HpdMeasure::Weight) {
        for (std::size_t i : region) {
            (spec.contains(x[i]) ? inside : outside) += w[i];
        }
    } else {
        double lo = x[region.front()];
        double hi = lo;
        for (std::size_t i : region) {
            lo = std::min(lo, x[i]);
            hi = std::max(hi, x[i]);
        }
        if (hi == lo) {
            (spec.contains(lo) ? inside : outside) = 1.0;
        } else {
            inside = std::max(0.0, std::min(hi, spec.hi()) - std::max(lo, spec.lo()));
            outside = (hi - lo) - inside;
        }
    }
    double total = inside + outside;
    if (!(total > 0.0)) {
        return Decision::Inconclusive;
    }
    if (inside / total >= options.threshold) {
        return Decision::Accept;
    }
    if (outside / total >= options.threshold) {
        return Decision::Reject;
    }
    return Decision::Inconclusive;
}

Decision decide(const ParticleFilter& f, const Spec& spec, Criterion criterion, const HpdOptions& options) {
    return criterion == Criterion::Mean ? decide_mean(f, spec) : decide_hpd(f, spec, options);
}

Support ProtocolConfig::support() const {
    if (prior) {
        return *prior;
    }
    if (model == ModelKind::PhaseGate) {
        return {-M_PI, M_PI};
    }
    return {0.0, 1.0};
}

LikelihoodModel ProtocolConfig::likelihood_model() const {
    if (model == ModelKind::PhaseGate) {
        return LikelihoodModel::phase_gate();
    }
    return LikelihoodModel::dephasing(omega, t);
}

void ProtocolConfig::validate() const {
    Support s = support();
    s.validate();
    if (!s.contains(x_true)) {
        throw InvalidParameter("true parameter lies outside the prior support");
    }
    if (model == ModelKind::Dephasing && !(s.lo >= 0.0)) {
        throw InvalidParameter("dephasing prior must be non-negative");
    }
    if (n_particles < 2) {
        throw InvalidParameter("need at least two particles");
    }
    if (m < 1 || m > kMaxSequenceLength) {
        throw InvalidParameter("batch length m must lie in [1, 4]");
    }
    if (n0 < m || n0 % m != 0) {
        throw InvalidParameter("N0 must be a positive multiple of m");
    }
    if (action_set.empty()) {
        throw InvalidParameter("empty action set");
    }
    if (model == ModelKind::Dephasing && !(t > 0.0)) {
        throw InvalidParameter("dephasing time per application must be positive");
    }
    resampler.validate();
    for (int c : checkpoints) {
        if (c < m || c > n0 || c % m != 0) {
            throw InvalidParameter("checkpoints must be multiples of m within [m, N0]");
        }
    }
}

void CertificationConfig::validate() const {
    protocol.validate();
    spec.validate();
    hpd.validate();
    Support s = protocol.support();
    if (spec.hi() < s.lo || spec.lo() > s.hi) {
        throw InvalidParameter("spec interval does not meet the prior support");
    }
}

ProtocolRun run_protocol(const ProtocolConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    LikelihoodModel model = cfg.likelihood_model();
    auto sequences = enumerate_sequences(cfg.action_set, cfg.m);
    std::mt19937_64 device(derive_seed(seed, 1));
    ProtocolRun run;
    ParticleFilter f = init_uniform(cfg.support(), cfg.n_particles, derive_seed(seed, 0), cfg.init);
    std::vector<int> checkpoints = cfg.checkpoints;
    std::sort(checkpoints.begin(), checkpoints.end());
    auto next_checkpoint = checkpoints.begin();
    run.chosen.reserve(cfg.rounds());
    for (int round = 0; round < cfg.rounds(); ++round) {
        ActionSequence seq = select_best(f, model, sequences, cfg.utility);
        OutcomeSequence outcomes = model.sample_outcomes(cfg.x_true, seq, device);
        try {
            f = batch_update(std::move(f), model, seq, outcomes, cfg.resampler);
        } catch (const Impoverishment&) {
            run.impoverished = true;
            return run;
        }
        run.chosen.push_back(std::move(seq));
        int actions = (round + 1) * cfg.m;
        while (next_checkpoint != checkpoints.end() && *next_checkpoint == actions) {
            run.checkpoints.push_back({actions, posterior_mean(f), posterior_variance(f)});
            ++next_checkpoint;
        }
    }
    run.filter = std::move(f);
    return run;
}

TrialRecord evaluate_run(const ProtocolRun& run, double x_true, const Spec& spec, Criterion criterion,
                         const HpdOptions& hpd) {
    TrialRecord r;
    r.chosen = run.chosen;
    r.in_spec = spec.contains(x_true);
    r.impoverished = run.impoverished || !run.filter;
    if (r.impoverished) {
        r.decision = Decision::Inconclusive;
        r.success = false;
        return r;
    }
    const ParticleFilter& f = *run.filter;
    r.posterior_mean = posterior_mean(f);
    r.posterior_variance = posterior_variance(f);
    r.decision = decide(f, spec, criterion, hpd);
    r.success = (r.decision == Decision::Accept && r.in_spec) || (r.decision == Decision::Reject && !r.in_spec);
    return r;
}

TrialRecord run_trial(const CertificationConfig& cfg) {
    cfg.validate();
    return evaluate_run(run_protocol(cfg.protocol, cfg.seed), cfg.protocol.x_true, cfg.spec, cfg.criterion,
                        cfg.hpd);
}

SuccessEstimate success_probability(const CertificationConfig& cfg, int n_trials, std::uint64_t master_seed,
                                    unsigned threads) {
    cfg.validate();
    SweepPoint point{cfg.spec, cfg.criterion};
    return success_curve(cfg.protocol, std::span<const SweepPoint>(&point, 1), cfg.hpd, n_trials, master_seed,
                         threads)
        .front();
}

std::vector<SuccessEstimate> success_curve(const ProtocolConfig& cfg, std::span<const SweepPoint> points,
                                           const HpdOptions& hpd, int n_trials, std::uint64_t master_seed,
                                           unsigned threads, std::vector<ProtocolRun>* runs) {
    if (n_trials < 1) {
        throw InvalidArgument("need at least one trial");
    }
    cfg.validate();
    hpd.validate();
    for (const auto& p : points) {
        p.spec.validate();
    }
    const std::size_t n = static_cast<std::size_t>(n_trials);
    // successes[trial][point]; reduced in trial order so scheduling cannot matter.
    std::vector<std::vector<char>> successes(n, std::vector<char>(points.size(), 0));
    std::vector<ProtocolRun> kept(runs ? n : 0);
    parallel_for(n, threads, [&](std::size_t i) {
        ProtocolRun run = run_protocol(cfg, derive_seed(master_seed, i));
        for (std::size_t k = 0; k < points.size(); ++k) {
            successes[i][k] = evaluate_run(run, cfg.x_true, points[k].spec, points[k].criterion, hpd).success;
        }
        if (runs) {
            kept[i] = std::move(run);
        }
    });
    std::vector<SuccessEstimate> out(points.size());
    for (std::size_t k = 0; k < points.size(); ++k) {
        int hits = 0;
        for (std::size_t i = 0; i < n; ++i) {
            hits += successes[i][k];
        }
        double p = static_cast<double>(hits) / n_trials;
        out[k] = {p, std::sqrt(p * (1.0 - p) / n_trials), n_trials};
    }
    if (runs) {
        *runs = std::move(kept);
    }
    return out;
}

}  // namespace qfunc
