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

#include "qfunc/design.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qfunc/errors.h"

namespace qfunc {

namespace {

constexpr double kTieTolerance = 1e-12;

// Likelihood of every branch for every particle: [particle][branch].
std::vector<std::vector<double>> likelihood_matrix(const ParticleFilter& f, const LikelihoodModel& model,
                                                   const ActionSequence& seq) {
    std::vector<std::vector<double>> out;
    out.reserve(f.size());
    for (double x : f.locations()) {
        out.push_back(model.branch_likelihoods(x, seq));
    }
    return out;
}

double weighted_variance(std::span<const double> x, std::span<const double> w) {
    double total = 0.0;
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        total += w[i];
        m += w[i] * x[i];
    }
    m /= total;
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        v += w[i] * (x[i] - m) * (x[i] - m);
    }
    return v / total;
}

struct Segment {
    int applications;
    Action basis;
};

std::vector<Segment> segments_of(const ActionSequence& seq) {
    std::vector<Segment> out;
    int k = 0;
    for (Action a : seq) {
        ++k;
        if (is_measurement(a)) {
            out.push_back({k, a});
            k = 0;
        }
    }
    return out;
}

}  // namespace

std::string_view to_string(UtilityKind u) { return u == UtilityKind::MI ? "MI" : "VAR"; }

UtilityKind parse_utility(std::string_view text) {
    if (text == "MI" || text == "mi") {
        return UtilityKind::MI;
    }
    if (text == "VAR" || text == "var") {
        return UtilityKind::VAR;
    }
    throw InvalidArgument("unknown utility '" + std::string(text) + "' (expected MI or VAR)");
}

std::vector<OutcomeBranch> branch_probabilities(const ParticleFilter& f, const LikelihoodModel& model,
                                                const ActionSequence& seq) {
    auto records = enumerate_outcomes(measurement_count(seq));
    std::vector<double> p(records.size(), 0.0);
    const auto& w = f.weights();
    const auto& x = f.locations();
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto lik = model.branch_likelihoods(x[i], seq);
        for (std::size_t k = 0; k < p.size(); ++k) {
            p[k] += w[i] * lik[k];
        }
    }
    std::vector<OutcomeBranch> out;
    out.reserve(records.size());
    for (std::size_t k = 0; k < records.size(); ++k) {
        out.push_back({std::move(records[k]), p[k], k});
    }
    return out;
}

double information_gain(std::span<const double> before, std::span<const double> after) {
    if (before.size() != after.size()) {
        throw InvalidArgument("information gain needs filters on a shared support");
    }
    double ig = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i) {
        if (after[i] <= 0.0) {
            continue;
        }
        if (before[i] <= 0.0) {
            throw UndefinedDivergence("posterior weight on a particle with zero prior weight");
        }
        ig += after[i] * std::log(after[i] / before[i]);
    }
    return ig;
}

double information_gain(const ParticleFilter& before, const ParticleFilter& after) {
    if (before.locations() != after.locations()) {
        throw InvalidArgument("information gain needs filters on a shared support");
    }
    return information_gain(before.weights(), after.weights());
}

double mutual_information_utility(const ParticleFilter& f, const LikelihoodModel& model,
                                  const ActionSequence& seq) {
    auto lik = likelihood_matrix(f, model, seq);
    const auto& w = f.weights();
    std::size_t branches = lik.front().size();
    double mi = 0.0;
    std::vector<double> updated(f.size());
    for (std::size_t k = 0; k < branches; ++k) {
        double pk = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            pk += w[i] * lik[i][k];
        }
        if (pk <= 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < f.size(); ++i) {
            updated[i] = w[i] * lik[i][k] / pk;
        }
        mi += pk * information_gain(w, updated);
    }
    return std::max(0.0, mi);
}

double variance_utility(const ParticleFilter& f, const LikelihoodModel& model, const ActionSequence& seq) {
    auto lik = likelihood_matrix(f, model, seq);
    const auto& w = f.weights();
    std::size_t branches = lik.front().size();
    double expected = 0.0;
    std::vector<double> updated(f.size());
    for (std::size_t k = 0; k < branches; ++k) {
        double pk = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            updated[i] = w[i] * lik[i][k];
            pk += updated[i];
        }
        if (pk <= 0.0) {
            continue;
        }
        expected += pk * weighted_variance(f.locations(), updated);
    }
    return -expected;
}

SequenceScorer::SequenceScorer(const ParticleFilter& f, const LikelihoodModel& model, int max_length)
    : filter_(f), max_length_(max_length), mean_(posterior_mean(f)) {
    if (max_length < 1) {
        throw InvalidParameter("sequence length must be at least 1");
    }
    const std::array<DensityMatrix, kStarts> starts = {
        model.input_state(),
        DensityMatrix::pure(M_PI / 2, 0.0),
        DensityMatrix::pure(M_PI / 2, M_PI),
        DensityMatrix::pure(M_PI / 2, M_PI / 2),
        DensityMatrix::pure(M_PI / 2, 3 * M_PI / 2),
    };
    const std::size_t stride = static_cast<std::size_t>(kStarts) * max_length * 2;
    table_.resize(f.size() * stride);
    for (std::size_t i = 0; i < f.size(); ++i) {
        CompiledChannel channel = model.compile(f.locations()[i]);
        double* row = table_.data() + i * stride;
        for (int s = 0; s < kStarts; ++s) {
            DensityMatrix state = starts[s];
            for (int k = 0; k < max_length; ++k) {
                state = channel.apply(state);
                // tr((I + sigma_x)/2 rho) = (1 + 2 Re rho_01)/2, same with Im for sigma_y.
                Complex c = state(0, 1);
                double px = std::clamp(0.5 + c.real(), 0.0, 1.0);
                double py = std::clamp(0.5 - c.imag(), 0.0, 1.0);
                row[(s * max_length + k) * 2 + 0] = px;
                row[(s * max_length + k) * 2 + 1] = py;
            }
        }
    }
}

double SequenceScorer::p_plus(std::size_t particle, int start, int applications, Action basis) const {
    const std::size_t stride = static_cast<std::size_t>(kStarts) * max_length_ * 2;
    return table_[particle * stride + (start * max_length_ + applications - 1) * 2 +
                  (basis == Action::MeasureY ? 1 : 0)];
}

double SequenceScorer::utility(const ActionSequence& seq, UtilityKind kind) const {
    if (static_cast<int>(seq.size()) > max_length_) {
        throw InvalidArgument("sequence longer than the scorer tables");
    }
    const auto& w = filter_.weights();
    const auto& x = filter_.locations();
    auto segments = segments_of(seq);
    if (segments.empty()) {
        if (kind == UtilityKind::MI) {
            return 0.0;
        }
        return -posterior_variance(filter_);
    }
    const std::size_t nb = std::size_t{1} << segments.size();
    std::vector<double> p(nb, 0.0), a(nb, 0.0), s1(nb, 0.0), s2(nb, 0.0);
    std::vector<double> lik(nb);
    for (std::size_t i = 0; i < filter_.size(); ++i) {
        if (w[i] == 0.0) {
            continue;
        }
        // Expand the branch tree in place; the latest outcome is the low bit.
        std::size_t width = 1;
        lik[0] = 1.0;
        for (std::size_t j = 0; j < segments.size(); ++j) {
            const Segment& seg = segments[j];
            for (std::size_t b = width; b-- > 0;) {
                int start = 0;
                if (j > 0) {
                    start = 1 + (segments[j - 1].basis == Action::MeasureY ? 2 : 0) + static_cast<int>(b & 1);
                }
                double pp = p_plus(i, start, seg.applications, seg.basis);
                double v = lik[b];
                lik[2 * b + 1] = v * (1.0 - pp);
                lik[2 * b] = v * pp;
            }
            width *= 2;
        }
        double d = x[i] - mean_;
        for (std::size_t b = 0; b < nb; ++b) {
            double wl = w[i] * lik[b];
            if (wl == 0.0) {
                continue;
            }
            p[b] += wl;
            if (kind == UtilityKind::MI) {
                a[b] += wl * std::log(lik[b]);
            } else {
                s1[b] += wl * d;
                s2[b] += wl * d * d;
            }
        }
    }
    double total = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
        if (p[b] <= 0.0) {
            continue;
        }
        if (kind == UtilityKind::MI) {
            total += a[b] - p[b] * std::log(p[b]);
        } else {
            total += s2[b] - s1[b] * s1[b] / p[b];
        }
    }
    return kind == UtilityKind::MI ? std::max(0.0, total) : -total;
}

std::vector<double> score_sequences(const ParticleFilter& f, const LikelihoodModel& model,
                                    std::span<const ActionSequence> sequences, UtilityKind utility) {
    std::size_t longest = 1;
    for (const auto& s : sequences) {
        longest = std::max(longest, s.size());
    }
    SequenceScorer scorer(f, model, static_cast<int>(longest));
    std::vector<double> out;
    out.reserve(sequences.size());
    for (const auto& s : sequences) {
        out.push_back(scorer.utility(s, utility));
    }
    return out;
}

ActionSequence select_best(const ParticleFilter& f, const LikelihoodModel& model,
                           std::span<const ActionSequence> sequences, UtilityKind utility) {
    if (sequences.empty()) {
        throw InvalidArgument("no candidate sequences");
    }
    auto scores = score_sequences(f, model, sequences, utility);
    std::size_t best = 0;
    for (std::size_t k = 1; k < scores.size(); ++k) {
        if (scores[k] > scores[best] + kTieTolerance * std::max(1.0, std::abs(scores[best]))) {
            best = k;
        }
    }
    return sequences[best];
}

}  // namespace qfunc
