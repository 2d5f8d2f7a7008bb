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

#ifndef QFUNC_ACTIONS_H
#define QFUNC_ACTIONS_H

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qfunc/qstate.h"

namespace qfunc {

/// One protocol step after a channel application. The declaration order is
/// the lexicographic order used for tie-breaking.
enum class Action { MeasureX, MeasureY, Identity };

enum class Outcome { Plus, Minus };

using ActionSequence = std::vector<Action>;
using OutcomeSequence = std::vector<Outcome>;

inline constexpr int kMaxSequenceLength = 4;

/// The full action set {X, Y, I}.
std::span<const Action> all_actions();

bool is_measurement(Action a);
int measurement_count(const ActionSequence& seq);

/// Projector onto the +-1 eigenspace of sigma_x or sigma_y. Identity has none.
const PovmElement& povm_element(Action a, Outcome o);

/// "X", "Y", "I"; sequences print as "IIIX".
char action_symbol(Action a);
std::string to_string(const ActionSequence& seq);
/// Inverse of to_string; throws InvalidArgument on other characters.
ActionSequence parse_sequence(std::string_view text);
Action parse_action(std::string_view text);

/// All |set|^m sequences in lexicographic order of the set's own ordering.
/// m > 4 prints a cost warning to stderr but still enumerates.
std::vector<ActionSequence> enumerate_sequences(std::span<const Action> action_set, int m);

/// All 2^k outcome records, first outcome most significant, Plus before Minus.
std::vector<OutcomeSequence> enumerate_outcomes(int k);

}  // namespace qfunc

#endif
