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

#include <gtest/gtest.h>

#include "qfunc/errors.h"
#include "qfunc/numerics.h"

using namespace qfunc;

namespace {

ParticleFilter filter_of(std::vector<double> x, std::vector<double> w) {
    return ParticleFilter(std::move(x), std::move(w), Support{-M_PI, M_PI}, 1);
}

CertificationConfig phase_config(double center, int m, std::uint64_t seed) {
    CertificationConfig cfg;
    cfg.protocol.x_true = M_PI / 10;
    cfg.protocol.m = m;
    cfg.protocol.n_particles = 500;
    cfg.spec = Spec{center, M_PI / 18};
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST(certify, spec_validation) {
    ASSERT_THROW(Spec({0.0, 0.0}).validate(), InvalidParameter);
    ASSERT_THROW(Spec({0.0, -1.0}).validate(), InvalidParameter);
    ASSERT_NO_THROW(Spec({0.0, 0.1}).validate());
    Spec s{1.0, 0.5};
    ASSERT_TRUE(s.contains(0.5));
    ASSERT_TRUE(s.contains(1.5));
    ASSERT_FALSE(s.contains(1.5000001));
}

TEST(certify, decide_mean_examples) {
    Spec spec{0.25, 0.25};
    ASSERT_EQ(decide_mean(filter_of({0.2, 0.3}, {0.5, 0.5}), spec), Decision::Accept);
    ASSERT_EQ(decide_mean(filter_of({0.7, 0.8}, {0.5, 0.5}), spec), Decision::Reject);
    // Mean lands exactly on the upper edge.
    ASSERT_EQ(decide_mean(filter_of({0.25, 0.75}, {0.5, 0.5}), spec), Decision::Accept);
}

TEST(certify, decide_mean_agrees_with_spec_membership) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    std::uniform_real_distribution<double> pos(0.01, 1.0);
    for (int k = 0; k < 500; ++k) {
        std::vector<double> x(5), w(5);
        double total = 0.0;
        for (int i = 0; i < 5; ++i) {
            x[i] = u(rng);
            w[i] = pos(rng);
            total += w[i];
        }
        for (double& v : w) {
            v /= total;
        }
        auto f = filter_of(x, w);
        Spec spec{u(rng), 0.5};
        Decision d = decide_mean(f, spec);
        ASSERT_NE(d, Decision::Inconclusive);
        ASSERT_EQ(d == Decision::Accept, spec.contains(posterior_mean(f)));
    }
}

TEST(certify, decide_hpd_examples) {
    Spec spec{0.0, 0.5};
    ASSERT_EQ(decide_hpd(filter_of({-0.1, 0.0, 0.1}, {0.3, 0.4, 0.3}), spec), Decision::Accept);
    ASSERT_EQ(decide_hpd(filter_of({1.0, 1.1, 1.2}, {0.3, 0.4, 0.3}), spec), Decision::Reject);
    ASSERT_EQ(decide_hpd(filter_of({0.0, 1.0}, {0.5, 0.5}), spec), Decision::Inconclusive);
    ASSERT_EQ(decide(filter_of({0.0, 1.0}, {0.5, 0.5}), spec, Criterion::Mean), Decision::Accept);
}

TEST(certify, decide_hpd_interval_length_measure) {
    HpdOptions opts;
    opts.measure = HpdMeasure::IntervalLength;
    Spec spec{0.0, 0.5};
    // Weight is almost all inside, but the region's hull reaches far outside.
    std::vector<double> x{0.0, 0.1, 2.0};
    std::vector<double> w{0.5, 0.44, 0.06};
    auto f = filter_of(x, w);
    ASSERT_EQ(decide_hpd(f, spec), Decision::Inconclusive);
    ASSERT_EQ(decide_hpd(f, spec, HpdOptions{0.9, 0.95, HpdMeasure::Weight}), Decision::Accept);
    ASSERT_EQ(decide_hpd(f, spec, opts), Decision::Inconclusive);
    ASSERT_EQ(decide_hpd(filter_of({0.1, 0.2}, {0.5, 0.5}), spec, opts), Decision::Accept);
    ASSERT_EQ(decide_hpd(filter_of({0.7, 0.7}, {0.5, 0.5}), spec, opts), Decision::Reject);
}

TEST(certify, hpd_options_validation) {
    ASSERT_THROW(HpdOptions({0.95, 0.5}).validate(), InvalidParameter);
    ASSERT_THROW(HpdOptions({1.0, 0.95}).validate(), InvalidParameter);
    ASSERT_NO_THROW(HpdOptions({0.9, 1.0}).validate());
}

TEST(certify, protocol_validation) {
    ProtocolConfig cfg;
    cfg.x_true = 0.3;
    cfg.m = 4;
    cfg.n0 = 302;
    ASSERT_THROW(cfg.validate(), InvalidParameter);
    cfg.n0 = 300;
    ASSERT_NO_THROW(cfg.validate());
    cfg.m = 5;
    ASSERT_THROW(cfg.validate(), InvalidParameter);
    cfg.m = 2;
    cfg.checkpoints = {3};
    ASSERT_THROW(cfg.validate(), InvalidParameter);
    cfg.checkpoints = {};
    cfg.x_true = 4.0;
    ASSERT_THROW(cfg.validate(), InvalidParameter);

    ProtocolConfig deph;
    deph.model = ModelKind::Dephasing;
    deph.x_true = 0.1;
    ASSERT_NO_THROW(deph.validate());
    deph.prior = Support{-0.5, 1.0};
    ASSERT_THROW(deph.validate(), InvalidParameter);
}

TEST(certify, names_round_trip) {
    ASSERT_EQ(parse_model("phase_gate"), ModelKind::PhaseGate);
    ASSERT_EQ(parse_model(to_string(ModelKind::Dephasing)), ModelKind::Dephasing);
    ASSERT_EQ(parse_criterion("HPD"), Criterion::Hpd);
    ASSERT_EQ(parse_criterion(to_string(Criterion::Mean)), Criterion::Mean);
    ASSERT_THROW(parse_model("amplitude"), InvalidArgument);
    ASSERT_THROW(parse_criterion("MEDIAN"), InvalidArgument);
}

TEST(certify, in_spec_device_is_accepted) {
    auto cfg = phase_config(M_PI / 10, 1, 0);
    auto est = success_probability(cfg, 20, 11);
    ASSERT_GE(est.estimate, 0.9);
    ASSERT_EQ(est.trials, 20);
}

TEST(certify, out_of_spec_device_is_rejected) {
    auto cfg = phase_config(M_PI / 2, 2, 0);
    auto est = success_probability(cfg, 20, 12);
    ASSERT_GE(est.estimate, 0.9);
}

TEST(certify, trial_records_obey_success_definition) {
    for (double center : {M_PI / 10, M_PI / 10 + M_PI / 18, M_PI / 3}) {
        for (auto criterion : {Criterion::Mean, Criterion::Hpd}) {
            auto cfg = phase_config(center, 1, 5);
            cfg.protocol.n0 = 60;
            cfg.criterion = criterion;
            auto r = run_trial(cfg);
            bool expected = (r.decision == Decision::Accept && r.in_spec) ||
                            (r.decision == Decision::Reject && !r.in_spec);
            ASSERT_EQ(r.success, expected);
            ASSERT_EQ(r.chosen.size(), 60u);
            if (criterion == Criterion::Mean) {
                ASSERT_NE(r.decision, Decision::Inconclusive);
            }
        }
    }
}

TEST(certify, replay_is_bitwise_deterministic) {
    auto cfg = phase_config(M_PI / 10, 2, 42);
    cfg.protocol.n0 = 40;
    auto a = run_trial(cfg);
    auto b = run_trial(cfg);
    ASSERT_EQ(a.posterior_mean, b.posterior_mean);
    ASSERT_EQ(a.posterior_variance, b.posterior_variance);
    ASSERT_EQ(a.chosen, b.chosen);
    ASSERT_EQ(a.decision, b.decision);
}

TEST(certify, thread_count_does_not_change_results) {
    auto cfg = phase_config(M_PI / 10 + M_PI / 18, 1, 0);
    cfg.protocol.n0 = 60;
    auto a = success_probability(cfg, 12, 77, 1);
    auto b = success_probability(cfg, 12, 77, 3);
    ASSERT_EQ(a.estimate, b.estimate);
}

TEST(certify, zero_trials_rejected) {
    auto cfg = phase_config(M_PI / 10, 1, 0);
    ASSERT_THROW(success_probability(cfg, 0, 1), InvalidArgument);
}

TEST(certify, checkpoints_are_recorded) {
    ProtocolConfig cfg;
    cfg.x_true = 0.3;
    cfg.n_particles = 300;
    cfg.n0 = 48;
    cfg.m = 2;
    cfg.checkpoints = {12, 24, 48};
    auto run = run_protocol(cfg, 3);
    ASSERT_EQ(run.checkpoints.size(), 3u);
    ASSERT_EQ(run.checkpoints[1].actions, 24);
    ASSERT_EQ(run.checkpoints[2].mean, posterior_mean(*run.filter));
    ASSERT_GE(run.checkpoints[0].variance, run.checkpoints[2].variance);
}

TEST(certify, dephasing_never_selects_identity) {
    for (auto utility : {UtilityKind::MI, UtilityKind::VAR}) {
        ProtocolConfig cfg;
        cfg.model = ModelKind::Dephasing;
        cfg.x_true = 0.1;
        cfg.n_particles = 400;
        cfg.n0 = 60;
        cfg.m = 2;
        cfg.utility = utility;
        auto run = run_protocol(cfg, 9);
        ASSERT_FALSE(run.impoverished);
        for (const auto& seq : run.chosen) {
            ASSERT_EQ(measurement_count(seq), 2) << to_string(seq);
        }
    }
}
