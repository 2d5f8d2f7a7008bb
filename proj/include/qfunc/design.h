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

#ifndef QFUNC_DESIGN_H
#define QFUNC_DESIGN_H

#include <span>
#include <string_view>
#include <vector>

#include "qfunc/actions.h"
#include "qfunc/smc.h"

namespace qfunc {

struct OutcomeBranch {
    OutcomeSequence outcomes;
    double probability;
    std::size_t index;
};

enum class UtilityKind { MI, VAR };

std::string_view to_string(UtilityKind u);
UtilityKind parse_utility(std::string_view text);

/// p_k = sum_i w_i Pr(D_k | x_i) for every outcome record of seq.
std::vector<OutcomeBranch> branch_probabilities(const ParticleFilter& f, const LikelihoodModel& model,
                                                const ActionSequence& seq);

/// KL divergence sum_i w'_i log(w'_i / w_i) of the updated weights from the
/// prior weights on a shared support. Throws UndefinedDivergence if some
/// w_i = 0 has w'_i > 0.
double information_gain(std::span<const double> before, std::span<const double> after);
double information_gain(const ParticleFilter& before, const ParticleFilter& after);

/// Expected information gain over the outcome branches of seq. Reference
/// implementation: one hypothetical weight update per branch.
double mutual_information_utility(const ParticleFilter& f, const LikelihoodModel& model,
                                  const ActionSequence& seq);

/// Minus the expected posterior variance over the outcome branches of seq.
/// Reference implementation.
double variance_utility(const ParticleFilter& f, const LikelihoodModel& model, const ActionSequence& seq);

/// Scores many sequences against one filter. The channel is applied to the
/// few states a projective X/Y record can leave behind, once per particle,
/// so each branch likelihood is a short product of table entries.
class SequenceScorer {
   public:
    /// Tables cover sequences up to length max_length.
    SequenceScorer(const ParticleFilter& f, const LikelihoodModel& model, int max_length);

    double utility(const ActionSequence& seq, UtilityKind kind) const;

   private:
    // start state index: 0 = rho_in, 1/2 = +x/-x, 3/4 = +y/-y.
    static constexpr int kStarts = 5;
    double p_plus(std::size_t particle, int start, int applications, Action basis) const;

    const ParticleFilter& filter_;
    int max_length_;
    double mean_;
    // [particle][start][applications - 1][basis]
    std::vector<double> table_;
};

/// Highest-utility sequence. A later sequence replaces the incumbent only if
/// it beats it by more than 1e-12 relative, so near-ties go to the earlier one.
/// Throws InvalidArgument on an empty list.
ActionSequence select_best(const ParticleFilter& f, const LikelihoodModel& model,
                           std::span<const ActionSequence> sequences, UtilityKind utility);

/// Utilities of every sequence (same order).
std::vector<double> score_sequences(const ParticleFilter& f, const LikelihoodModel& model,
                                    std::span<const ActionSequence> sequences, UtilityKind utility);

}  // namespace qfunc

#endif
