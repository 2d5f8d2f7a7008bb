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

#include <numeric>

#include <gtest/gtest.h>

#include "qfunc/errors.h"

using namespace qfunc;

namespace {

ParticleFilter two_point(double w0) { return ParticleFilter({0.0, 1.0}, {w0, 1.0 - w0}, Support{0.0, 1.0}, 1); }

ActionSequence seq(const char* text) { return parse_sequence(text); }

}  // namespace

TEST(smc, init_uniform_examples) {
    auto f = init_uniform(Support{-M_PI, M_PI}, 2000, 7);
    ASSERT_EQ(f.size(), 2000u);
    for (double w : f.weights()) {
        ASSERT_DOUBLE_EQ(w, 1.0 / 2000);
    }
    for (double x : f.locations()) {
        ASSERT_GE(x, -M_PI);
        ASSERT_LE(x, M_PI);
    }
    ASSERT_NEAR(posterior_mean(f), 0.0, 0.01);
    ASSERT_NEAR(posterior_variance(f), M_PI * M_PI / 3, 0.01);
    ASSERT_THROW(init_uniform(Support{1.0, 1.0}, 10, 1), InvalidParameter);
    ASSERT_THROW(init_uniform(Support{0.0, 1.0}, 1, 1), InvalidParameter);
}

TEST(smc, init_iid_also_uniform) {
    auto f = init_uniform(Support{0.0, 1.0}, 20000, 3, InitSampling::Iid);
    ASSERT_NEAR(posterior_mean(f), 0.5, 0.01);
    ASSERT_NEAR(posterior_variance(f), 1.0 / 12, 0.005);
}

TEST(smc, stratified_has_one_particle_per_cell) {
    auto f = init_uniform(Support{0.0, 1.0}, 100, 9);
    for (int i = 0; i < 100; ++i) {
        ASSERT_GE(f.locations()[i], i / 100.0);
        ASSERT_LE(f.locations()[i], (i + 1) / 100.0);
    }
}

TEST(smc, filter_validation) {
    ASSERT_THROW(ParticleFilter({0.5}, {1.0}, Support{}, 1), InvalidArgument);
    ASSERT_THROW(ParticleFilter({0.1, 0.2}, {0.5, 0.6}, Support{}, 1), InvalidArgument);
    ASSERT_THROW(ParticleFilter({0.1, 0.2}, {1.5, -0.5}, Support{}, 1), InvalidArgument);
    ASSERT_THROW(ParticleFilter({0.1, 2.0}, {0.5, 0.5}, Support{}, 1), InvalidArgument);
    ASSERT_THROW(ParticleFilter({0.1, 0.2, 0.3}, {0.5, 0.5}, Support{}, 1), InvalidArgument);
}

TEST(smc, phase_gate_likelihood_examples) {
    auto model = LikelihoodModel::phase_gate();
    for (double theta : {0.1, M_PI / 10, 1.0, -2.0}) {
        double c = std::cos(theta / 2);
        ASSERT_NEAR(model.sequence_likelihood(theta, seq("X"), {Outcome::Plus}), c * c, 1e-14);
        double c3 = std::cos(3 * theta / 2);
        ASSERT_NEAR(model.sequence_likelihood(theta, seq("IIX"), {Outcome::Plus}), c3 * c3, 1e-14);
        ASSERT_NEAR(model.sequence_likelihood(theta, seq("III"), {}), 1.0, 1e-15);
    }
    ASSERT_THROW(model.sequence_likelihood(0.1, seq("XX"), {Outcome::Plus}), InvalidArgument);
}

TEST(smc, dephasing_likelihood_examples) {
    auto model = LikelihoodModel::dephasing(0.0, 5.0);
    for (double g : {0.0, 0.02, 0.1, 0.5}) {
        ASSERT_NEAR(model.sequence_likelihood(g, seq("X"), {Outcome::Plus}), 0.5 * (1 + std::exp(-5 * g)), 1e-14);
        ASSERT_NEAR(model.sequence_likelihood(g, seq("IIX"), {Outcome::Plus}), 0.5 * (1 + std::exp(-15 * g)),
                    1e-14);
        ASSERT_NEAR(model.sequence_likelihood(g, seq("Y"), {Outcome::Plus}), 0.5, 1e-14);
    }
    ASSERT_THROW(LikelihoodModel::dephasing(0.0, 0.0), InvalidParameter);
    ASSERT_THROW(model.sequence_likelihood(-0.1, seq("X"), {Outcome::Plus}), InvalidParameter);
}

TEST(smc, branch_likelihoods_sum_to_one) {
    auto phase = LikelihoodModel::phase_gate();
    auto deph = LikelihoodModel::dephasing(0.3, 5.0);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int m = 1; m <= 4; ++m) {
        for (const auto& s : enumerate_sequences(all_actions(), m)) {
            double x = u(rng);
            for (const auto* model : {&phase, &deph}) {
                auto b = model->branch_likelihoods(x, s);
                ASSERT_EQ(b.size(), std::size_t{1} << measurement_count(s));
                ASSERT_NEAR(std::accumulate(b.begin(), b.end(), 0.0), 1.0, 1e-12);
                auto outcomes = enumerate_outcomes(measurement_count(s));
                for (std::size_t k = 0; k < b.size(); ++k) {
                    ASSERT_NEAR(b[k], model->sequence_likelihood(x, s, outcomes[k]), 1e-14);
                }
            }
        }
    }
}

TEST(smc, repeated_measurement_is_deterministic) {
    auto model = LikelihoodModel::phase_gate();
    // Second X directly after the first sees the collapsed state rotated once more.
    double theta = 0.4;
    double c = std::cos(theta / 2);
    ASSERT_NEAR(model.sequence_likelihood(theta, seq("XX"), {Outcome::Plus, Outcome::Plus}), c * c * c * c, 1e-14);
}

TEST(smc, bayes_update_example) {
    auto f = reweight(two_point(0.5), std::vector<double>{0.8, 0.4});
    ASSERT_NEAR(f.weights()[0], 2.0 / 3, 1e-15);
    ASSERT_NEAR(f.weights()[1], 1.0 / 3, 1e-15);
    ASSERT_THROW(reweight(two_point(0.5), std::vector<double>{0.0, 0.0}), Impoverishment);
    ASSERT_THROW(reweight(two_point(0.5), std::vector<double>{1.0}), InvalidArgument);
}

TEST(smc, ess_examples) {
    ASSERT_NEAR(effective_sample_size(two_point(0.5)), 2.0, 1e-15);
    ASSERT_NEAR(effective_sample_size(two_point(1.0)), 1.0, 1e-15);
    auto f = init_uniform(Support{}, 1000, 1);
    ASSERT_NEAR(effective_sample_size(f), 1000.0, 1e-9);
}

TEST(smc, resample_preserves_mean_on_average) {
    std::vector<double> x{0.1, 0.3, 0.6, 0.9};
    std::vector<double> w{0.1, 0.2, 0.3, 0.4};
    ParticleFilter base(x, w, Support{0.0, 1.0}, 17);
    double target = posterior_mean(base);
    double var = posterior_variance(base);
    double total = 0.0;
    int reps = 200;
    ParticleFilter f = base;
    for (int r = 0; r < reps; ++r) {
        std::vector<double> bx, bw;
        for (int k = 0; k < 200; ++k) {
            bx.push_back(x[k % 4]);
            bw.push_back(w[k % 4] / 50);
        }
        f.set_particles(bx, bw);
        f = resample(std::move(f));
        total += posterior_mean(f);
        for (double v : f.locations()) {
            ASSERT_GE(v, 0.0);
            ASSERT_LE(v, 1.0);
        }
        for (double v : f.weights()) {
            ASSERT_DOUBLE_EQ(v, 1.0 / 200);
        }
    }
    // Each resampled mean has sd about sqrt(var / 200).
    double se = std::sqrt(var / 200 / reps);
    ASSERT_NEAR(total / reps, target, 4 * se);
}

TEST(smc, resample_degenerate_posterior) {
    ParticleFilter f({0.2, 0.2, 0.2}, {0.2, 0.3, 0.5}, Support{}, 5);
    f = resample(std::move(f));
    for (double v : f.locations()) {
        ASSERT_NEAR(v, 0.2, 1e-12);
    }
    ASSERT_THROW(resample(two_point(0.5), ResamplerOptions{0.0, 0.5}), InvalidParameter);
}

TEST(smc, hpd_examples) {
    std::vector<double> x(100), w(100, 0.01);
    std::iota(x.begin(), x.end(), 0.0);
    ParticleFilter uniform(x, w, Support{0.0, 100.0}, 1);
    ASSERT_EQ(hpd_region(uniform, 0.95).size(), 95u);

    ParticleFilter peaked({0.1, 0.2, 0.3}, {0.96, 0.02, 0.02}, Support{}, 1);
    auto r = hpd_region(peaked, 0.95);
    ASSERT_EQ(r, std::vector<std::size_t>{0});
    ASSERT_THROW(hpd_region(peaked, 1.0), InvalidParameter);
}

TEST(smc, batch_update_matches_product_of_likelihoods) {
    auto model = LikelihoodModel::phase_gate();
    ResamplerOptions never{0.98, 0.0};
    auto f0 = init_uniform(Support{-M_PI, M_PI}, 500, 21);
    auto s1 = seq("IXY");
    auto s2 = seq("XIX");
    OutcomeSequence o1{Outcome::Plus, Outcome::Minus};
    OutcomeSequence o2{Outcome::Minus, Outcome::Plus};
    auto a = batch_update(batch_update(f0, model, s1, o1, never), model, s2, o2, never);

    std::vector<double> joint(f0.size());
    for (std::size_t i = 0; i < f0.size(); ++i) {
        double x = f0.locations()[i];
        joint[i] = model.sequence_likelihood(x, s1, o1) * model.sequence_likelihood(x, s2, o2);
    }
    auto b = reweight(f0, joint);
    for (std::size_t i = 0; i < f0.size(); ++i) {
        ASSERT_NEAR(a.weights()[i], b.weights()[i], 1e-12);
    }
}

TEST(smc, batch_update_is_deterministic) {
    auto model = LikelihoodModel::phase_gate();
    auto run = [&] {
        auto f = init_uniform(Support{-M_PI, M_PI}, 300, 99);
        std::mt19937_64 device(5);
        for (int r = 0; r < 50; ++r) {
            auto s = seq("IX");
            f = batch_update(std::move(f), model, s, model.sample_outcomes(0.3, s, device));
        }
        return f;
    };
    auto a = run();
    auto b = run();
    ASSERT_EQ(a.locations(), b.locations());
    ASSERT_EQ(a.weights(), b.weights());
}

TEST(smc, posterior_concentrates_on_truth) {
    auto model = LikelihoodModel::phase_gate();
    double truth = M_PI / 10;
    auto f = init_uniform(Support{-M_PI, M_PI}, 2000, 8);
    std::mt19937_64 device(12);
    for (int r = 0; r < 300; ++r) {
        auto s = seq(r % 2 ? "X" : "Y");
        f = batch_update(std::move(f), model, s, model.sample_outcomes(truth, s, device));
    }
    // Fisher information is one per shot, so the posterior sd is near 1/sqrt(300).
    ASSERT_LT(posterior_variance(f), 0.01);
    ASSERT_NEAR(posterior_mean(f), truth, 4 * std::sqrt(posterior_variance(f)));
}

TEST(smc, sample_outcomes_frequencies) {
    auto model = LikelihoodModel::phase_gate();
    std::mt19937_64 rng(2);
    int plus = 0;
    int n = 20000;
    for (int k = 0; k < n; ++k) {
        plus += model.sample_outcomes(1.0, seq("X"), rng)[0] == Outcome::Plus;
    }
    double p = std::pow(std::cos(0.5), 2);
    ASSERT_NEAR(static_cast<double>(plus) / n, p, 4 * std::sqrt(p * (1 - p) / n));
}
