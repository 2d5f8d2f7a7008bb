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

#ifndef QFUNC_ERRORS_H
#define QFUNC_ERRORS_H

#include <stdexcept>
#include <string>

namespace qfunc {

/// A matrix or Bloch vector that is not a valid qubit state.
struct InvalidState : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A parameter outside its domain (non-unit axis, negative rate, n = 0, ...).
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Mismatched or empty arguments (outcome counts, empty candidate lists, ...).
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A computation that would exceed the supported size.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Post-measurement state requested for an outcome of (near) zero probability.
struct ZeroProbabilityOutcome : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The particle filter's total likelihood underflowed.
struct Impoverishment : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// KL divergence with a particle whose prior weight is zero but posterior is not.
struct UndefinedDivergence : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace qfunc

#endif
