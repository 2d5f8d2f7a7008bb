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

#ifndef QFUNC_CLI_H
#define QFUNC_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfunc/certify.h"

namespace qfunc::cli {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

/// Bad config file contents; the message names the offending field.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class BoundKind { PhaseGate, RandomError, Dephasing, DephasingSmallEps, ClassicalPhaseGate };

struct ChernoffConfig {
    BoundKind bound = BoundKind::Dephasing;
    std::string sweep_variable;
    std::vector<double> sweep_values;
    /// Empty variable means no series.
    std::string series_variable;
    std::vector<double> series_values;
    std::vector<int> iterations = {1};
    // Fixed parameter values; the sweep and series override theirs.
    double theta = M_PI;
    double eps = 0.0;
    double alpha = M_PI / 2;
    double beta = 0.0;
    double w = 0.0;
    double tau = 1.0;
    int quadrature_nodes = 64;
    bool fresh_error_per_application = false;
    /// Maximize over pure inputs instead of using (alpha, beta).
    bool optimize_input = false;
};

struct CertifyConfig {
    ProtocolConfig protocol;
    std::vector<int> m_values = {1};
    std::vector<UtilityKind> utilities = {UtilityKind::MI};
    std::vector<Criterion> criteria = {Criterion::Mean};
    double half_width = 0.0;
    std::vector<double> centers;
    HpdOptions hpd;
    int trials = 100;
    std::uint64_t seed = 1;
};

struct ConvergenceConfig {
    ProtocolConfig protocol;
    std::vector<int> m_values = {1};
    std::vector<int> checkpoints = {12, 24, 48, 96, 192, 384, 768, 1200};
    /// Fit uses checkpoints >= max / 10^decades, unless fit_min_n0 is set.
    double fit_decades = 2.0;
    std::optional<int> fit_min_n0;
    int trials = 50;
    std::uint64_t seed = 1;
};

/// Parsers take the JSON text; unknown keys, wrong types and out-of-range
/// values throw ConfigError.
ChernoffConfig parse_chernoff_config(const std::string& text);
CertifyConfig parse_certify_config(const std::string& text);
ConvergenceConfig parse_convergence_config(const std::string& text);

/// Each command writes the CSV header and rows to `csv`. Output depends only
/// on the config, never on `threads`.
void run_chernoff(const ChernoffConfig& cfg, std::ostream& csv);
void run_certify(const CertifyConfig& cfg, unsigned threads, std::ostream& csv);
/// `fit` receives the per-m power-law fit table.
void run_convergence(const ConvergenceConfig& cfg, unsigned threads, std::ostream& csv, std::ostream& fit);

/// Full command-line entry point; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace qfunc::cli

#endif
