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

#include "qfunc/actions.h"

#include <array>
#include <iostream>

#include "qfunc/errors.h"

namespace qfunc {

namespace {

constexpr std::array<Action, 3> kAllActions = {Action::MeasureX, Action::MeasureY, Action::Identity};

}  // namespace

std::span<const Action> all_actions() { return kAllActions; }

bool is_measurement(Action a) { return a != Action::Identity; }

int measurement_count(const ActionSequence& seq) {
    int k = 0;
    for (Action a : seq) {
        k += is_measurement(a);
    }
    return k;
}

const PovmElement& povm_element(Action a, Outcome o) {
    static const PovmElement x_plus = PovmElement::projector(Vec3::UnitX(), "x+");
    static const PovmElement x_minus = PovmElement::projector(-Vec3::UnitX(), "x-");
    static const PovmElement y_plus = PovmElement::projector(Vec3::UnitY(), "y+");
    static const PovmElement y_minus = PovmElement::projector(-Vec3::UnitY(), "y-");
    switch (a) {
        case Action::MeasureX:
            return o == Outcome::Plus ? x_plus : x_minus;
        case Action::MeasureY:
            return o == Outcome::Plus ? y_plus : y_minus;
        case Action::Identity:
            break;
    }
    throw InvalidArgument("identity action has no POVM");
}

char action_symbol(Action a) {
    switch (a) {
        case Action::MeasureX:
            return 'X';
        case Action::MeasureY:
            return 'Y';
        case Action::Identity:
            return 'I';
    }
    return '?';
}

std::string to_string(const ActionSequence& seq) {
    std::string s;
    for (Action a : seq) {
        s.push_back(action_symbol(a));
    }
    return s;
}

Action parse_action(std::string_view text) {
    if (text == "X" || text == "x") {
        return Action::MeasureX;
    }
    if (text == "Y" || text == "y") {
        return Action::MeasureY;
    }
    if (text == "I" || text == "i") {
        return Action::Identity;
    }
    throw InvalidArgument("unknown action '" + std::string(text) + "' (expected X, Y or I)");
}

ActionSequence parse_sequence(std::string_view text) {
    ActionSequence seq;
    for (char c : text) {
        seq.push_back(parse_action(std::string_view(&c, 1)));
    }
    return seq;
}

std::vector<ActionSequence> enumerate_sequences(std::span<const Action> action_set, int m) {
    if (m < 1) {
        throw InvalidParameter("sequence length must be at least 1");
    }
    if (action_set.empty()) {
        throw InvalidArgument("empty action set");
    }
    if (m > kMaxSequenceLength) {
        std::cerr << "warning: enumerating sequences of length " << m
                  << "; cost grows as 6^m branches per particle\n";
    }
    std::vector<ActionSequence> out;
    std::vector<std::size_t> digits(m, 0);
    for (;;) {
        ActionSequence seq(m);
        for (int i = 0; i < m; ++i) {
            seq[i] = action_set[digits[i]];
        }
        out.push_back(std::move(seq));
        int pos = m - 1;
        while (pos >= 0 && ++digits[pos] == action_set.size()) {
            digits[pos] = 0;
            --pos;
        }
        if (pos < 0) {
            break;
        }
    }
    return out;
}

std::vector<OutcomeSequence> enumerate_outcomes(int k) {
    if (k < 0 || k > 30) {
        throw InvalidParameter("outcome count out of range");
    }
    std::vector<OutcomeSequence> out;
    std::size_t n = std::size_t{1} << k;
    out.reserve(n);
    for (std::size_t b = 0; b < n; ++b) {
        OutcomeSequence o(k);
        for (int j = 0; j < k; ++j) {
            o[j] = ((b >> (k - 1 - j)) & 1) ? Outcome::Minus : Outcome::Plus;
        }
        out.push_back(std::move(o));
    }
    return out;
}

}  // namespace qfunc
