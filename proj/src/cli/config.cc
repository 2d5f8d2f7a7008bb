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

// JSON config parsing. Every key is consumed explicitly; leftovers are
// reported as unknown so typos fail fast instead of silently using defaults.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <regex>
#include <set>

#include <json.hpp>

#include "qfunc/cli.h"
#include "qfunc/errors.h"

namespace qfunc::cli {

namespace {

using nlohmann::json;

std::string join_path(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

// "pi", "-pi/2", "3*pi/4", "0.5pi" as well as plain numbers.
std::optional<double> parse_pi_expression(const std::string& s) {
    static const std::regex re(R"(^\s*(-)?\s*([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)?\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) {
        return std::nullopt;
    }
    double v = M_PI;
    if (m[2].matched) {
        v *= std::stod(m[2].str());
    }
    if (m[3].matched) {
        double d = std::stod(m[3].str());
        if (d == 0.0) {
            return std::nullopt;
        }
        v /= d;
    }
    return m[1].matched ? -v : v;
}

class Fields {
   public:
    Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError(where() + "expected an object");
        }
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& raw(const std::string& key) {
        used_.insert(key);
        return j_.at(key);
    }

    double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
        if (!has(key)) {
            return require(key, fallback);
        }
        return to_number(raw(key), join_path(path_, key));
    }

    int integer(const std::string& key, std::optional<int> fallback = std::nullopt) {
        if (!has(key)) {
            return require(key, fallback);
        }
        return to_integer(raw(key), join_path(path_, key));
    }

    std::uint64_t unsigned64(const std::string& key, std::uint64_t fallback) {
        if (!has(key)) {
            return fallback;
        }
        const json& v = raw(key);
        if (!v.is_number_unsigned()) {
            throw ConfigError(join_path(path_, key) + ": expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    bool boolean(const std::string& key, bool fallback) {
        if (!has(key)) {
            return fallback;
        }
        const json& v = raw(key);
        if (!v.is_boolean()) {
            throw ConfigError(join_path(path_, key) + ": expected true or false");
        }
        return v.get<bool>();
    }

    std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
        if (!has(key)) {
            return require(key, fallback);
        }
        const json& v = raw(key);
        if (!v.is_string()) {
            throw ConfigError(join_path(path_, key) + ": expected a string");
        }
        return v.get<std::string>();
    }

    /// A single string or a list of strings.
    std::vector<std::string> strings(const std::string& key, std::vector<std::string> fallback) {
        if (!has(key)) {
            return fallback;
        }
        const json& v = raw(key);
        std::string p = join_path(path_, key);
        if (v.is_string()) {
            return {v.get<std::string>()};
        }
        if (!v.is_array() || v.empty()) {
            throw ConfigError(p + ": expected a string or a non-empty list of strings");
        }
        std::vector<std::string> out;
        for (const auto& e : v) {
            if (!e.is_string()) {
                throw ConfigError(p + ": expected a list of strings");
            }
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    /// A single integer or a list of integers.
    std::vector<int> integers(const std::string& key, std::vector<int> fallback) {
        if (!has(key)) {
            return fallback;
        }
        const json& v = raw(key);
        std::string p = join_path(path_, key);
        if (v.is_number()) {
            return {to_integer(v, p)};
        }
        if (!v.is_array() || v.empty()) {
            throw ConfigError(p + ": expected an integer or a non-empty list of integers");
        }
        std::vector<int> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(to_integer(v[i], p + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    Fields sub(const std::string& key) { return Fields(raw(key), join_path(path_, key)); }

    /// Every key must have been read.
    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!used_.count(it.key())) {
                throw ConfigError("unknown key '" + join_path(path_, it.key()) + "'");
            }
        }
    }

    const std::string& path() const { return path_; }

    static double to_number(const json& v, const std::string& p) {
        if (v.is_number()) {
            return v.get<double>();
        }
        if (v.is_string()) {
            if (auto d = parse_pi_expression(v.get<std::string>())) {
                return *d;
            }
        }
        throw ConfigError(p + ": expected a number (or an expression like \"pi/10\")");
    }

    static int to_integer(const json& v, const std::string& p) {
        if (!v.is_number_integer()) {
            throw ConfigError(p + ": expected an integer");
        }
        auto x = v.get<std::int64_t>();
        if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
            throw ConfigError(p + ": integer out of range");
        }
        return static_cast<int>(x);
    }

   private:
    template <typename T>
    T require(const std::string& key, const std::optional<T>& fallback) const {
        if (!fallback) {
            throw ConfigError("missing required key '" + join_path(path_, key) + "'");
        }
        return *fallback;
    }

    std::string where() const { return path_.empty() ? std::string("config: ") : path_ + ": "; }

    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

// {"values": [...]} or {"start", "stop", "step"} or {"start", "stop", "count"}.
std::vector<double> parse_values(Fields& f) {
    std::vector<double> out;
    std::string p = f.path();
    if (f.has("values")) {
        const json& v = f.raw("values");
        if (!v.is_array() || v.empty()) {
            throw ConfigError(join_path(p, "values") + ": expected a non-empty list");
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(Fields::to_number(v[i], join_path(p, "values") + "[" + std::to_string(i) + "]"));
        }
        return out;
    }
    double start = f.number("start");
    double stop = f.number("stop");
    if (!(stop >= start)) {
        throw ConfigError(p + ": empty range (stop < start)");
    }
    if (f.has("count")) {
        int count = f.integer("count");
        if (count < 1) {
            throw ConfigError(join_path(p, "count") + ": must be at least 1");
        }
        if (count == 1) {
            return {start};
        }
        for (int i = 0; i < count; ++i) {
            out.push_back(start + (stop - start) * i / (count - 1));
        }
        return out;
    }
    double step = f.number("step");
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ConfigError(join_path(p, "step") + ": must be positive");
    }
    double span = (stop - start) / step;
    if (span > 1e6) {
        throw ConfigError(p + ": range has too many points");
    }
    auto n = static_cast<long>(std::floor(span + 1e-9)) + 1;
    for (long i = 0; i < n; ++i) {
        out.push_back(start + step * static_cast<double>(i));
    }
    return out;
}

template <typename Fn>
auto wrap(const std::string& path, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void parse_protocol_common(Fields& f, ProtocolConfig& p) {
    p.model = wrap("model", [&] { return parse_model(f.string("model")); });
    p.x_true = f.number("x_true");
    if (f.has("prior")) {
        Fields pr = f.sub("prior");
        p.prior = Support{pr.number("lo"), pr.number("hi")};
        pr.finish();
    }
    p.n_particles = f.integer("particles", 2000);
    if (f.has("dephasing")) {
        Fields d = f.sub("dephasing");
        p.omega = d.number("omega", 0.0);
        p.t = d.number("t", 5.0);
        d.finish();
    }
    if (f.has("resampler")) {
        Fields r = f.sub("resampler");
        p.resampler.a = r.number("a", 0.98);
        p.resampler.threshold = r.number("threshold", 0.5);
        r.finish();
    }
    std::string init = f.string("init", std::string("stratified"));
    if (init == "stratified") {
        p.init = InitSampling::Stratified;
    } else if (init == "iid") {
        p.init = InitSampling::Iid;
    } else {
        throw ConfigError("init: expected \"stratified\" or \"iid\"");
    }
    std::string actions = f.string("actions", std::string("XYI"));
    p.action_set = wrap("actions", [&] { return parse_sequence(actions); });
    if (p.action_set.empty()) {
        throw ConfigError("actions: empty action set");
    }
}

std::vector<UtilityKind> parse_utilities(Fields& f) {
    std::vector<UtilityKind> out;
    for (const auto& s : f.strings("utility", {"MI"})) {
        out.push_back(wrap("utility", [&] { return parse_utility(s); }));
    }
    return out;
}

// Re-validates the protocol for every m so a bad combination is a config
// error rather than a failure halfway through a sweep.
void check_protocol(ProtocolConfig p, const std::vector<int>& m_values, int n0) {
    for (int m : m_values) {
        p.m = m;
        p.n0 = n0;
        try {
            p.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError("m = " + std::to_string(m) + ": " + e.what());
        }
    }
}

const std::map<BoundKind, std::set<std::string>>& bound_variables() {
    static const std::map<BoundKind, std::set<std::string>> vars = {
        {BoundKind::PhaseGate, {"theta", "eps", "alpha", "beta"}},
        {BoundKind::RandomError, {"theta", "w", "alpha", "beta"}},
        {BoundKind::Dephasing, {"tau", "eps"}},
        {BoundKind::DephasingSmallEps, {"tau", "eps"}},
        {BoundKind::ClassicalPhaseGate, {"theta", "eps"}},
    };
    return vars;
}

BoundKind parse_bound(const std::string& s) {
    static const std::map<std::string, BoundKind> names = {
        {"phase_gate", BoundKind::PhaseGate},
        {"random_error", BoundKind::RandomError},
        {"dephasing", BoundKind::Dephasing},
        {"dephasing_small_eps", BoundKind::DephasingSmallEps},
        {"classical_phase_gate", BoundKind::ClassicalPhaseGate},
    };
    auto it = names.find(s);
    if (it == names.end()) {
        throw ConfigError("bound: unknown bound '" + s +
                          "' (expected phase_gate, random_error, dephasing, dephasing_small_eps or "
                          "classical_phase_gate)");
    }
    return it->second;
}

}  // namespace

ChernoffConfig parse_chernoff_config(const std::string& text) {
    json j = parse_json(text);
    Fields f(j, "");
    ChernoffConfig c;
    c.bound = parse_bound(f.string("bound"));
    const auto& allowed = bound_variables().at(c.bound);
    auto check_variable = [&](const std::string& v, const std::string& where) {
        if (!allowed.count(v)) {
            std::string list;
            for (const auto& a : allowed) {
                list += (list.empty() ? "" : ", ") + a;
            }
            throw ConfigError(where + ": variable '" + v + "' not available for this bound (one of " + list + ")");
        }
    };

    Fields sweep = f.sub("sweep");
    c.sweep_variable = sweep.string("variable");
    check_variable(c.sweep_variable, "sweep.variable");
    c.sweep_values = parse_values(sweep);
    sweep.finish();

    if (f.has("series")) {
        Fields series = f.sub("series");
        c.series_variable = series.string("variable");
        check_variable(c.series_variable, "series.variable");
        if (c.series_variable == c.sweep_variable) {
            throw ConfigError("series.variable: must differ from sweep.variable");
        }
        c.series_values = parse_values(series);
        series.finish();
    }

    c.iterations = f.integers("iterations", {1});
    for (int n : c.iterations) {
        if (n < 1) {
            throw ConfigError("iterations: every entry must be at least 1");
        }
    }

    if (f.has("params")) {
        Fields p = f.sub("params");
        c.theta = p.number("theta", c.theta);
        c.eps = p.number("eps", c.eps);
        c.alpha = p.number("alpha", c.alpha);
        c.beta = p.number("beta", c.beta);
        c.w = p.number("w", c.w);
        c.tau = p.number("tau", c.tau);
        c.quadrature_nodes = p.integer("quadrature_nodes", c.quadrature_nodes);
        c.fresh_error_per_application = p.boolean("fresh_error_per_application", false);
        p.finish();
    }
    if (c.quadrature_nodes < 1) {
        throw ConfigError("params.quadrature_nodes: must be at least 1");
    }
    c.optimize_input = f.boolean("optimize_input", false);
    if (c.optimize_input && c.bound != BoundKind::PhaseGate && c.bound != BoundKind::RandomError) {
        throw ConfigError("optimize_input: only meaningful for phase_gate and random_error bounds");
    }
    f.finish();
    return c;
}

CertifyConfig parse_certify_config(const std::string& text) {
    json j = parse_json(text);
    Fields f(j, "");
    CertifyConfig c;
    parse_protocol_common(f, c.protocol);
    c.protocol.n0 = f.integer("n0", 300);
    c.m_values = f.integers("m", {1});
    c.utilities = parse_utilities(f);
    c.criteria.clear();
    for (const auto& s : f.strings("criterion", {"MEAN"})) {
        c.criteria.push_back(wrap("criterion", [&] { return parse_criterion(s); }));
    }

    Fields spec = f.sub("spec");
    c.half_width = spec.number("half_width");
    {
        Fields centers = spec.sub("centers");
        c.centers = parse_values(centers);
        centers.finish();
    }
    spec.finish();

    if (f.has("hpd")) {
        Fields h = f.sub("hpd");
        c.hpd.credibility = h.number("credibility", 0.95);
        c.hpd.threshold = h.number("threshold", 0.95);
        std::string measure = h.string("measure", std::string("weight"));
        if (measure == "weight") {
            c.hpd.measure = HpdMeasure::Weight;
        } else if (measure == "interval_length") {
            c.hpd.measure = HpdMeasure::IntervalLength;
        } else {
            throw ConfigError("hpd.measure: expected \"weight\" or \"interval_length\"");
        }
        h.finish();
    }
    c.trials = f.integer("trials", 100);
    c.seed = f.unsigned64("seed", 1);
    f.finish();

    if (c.trials < 1) {
        throw ConfigError("trials: must be at least 1");
    }
    try {
        c.hpd.validate();
        for (double xc : c.centers) {
            Spec{xc, c.half_width}.validate();
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("spec: ") + e.what());
    }
    check_protocol(c.protocol, c.m_values, c.protocol.n0);
    return c;
}

ConvergenceConfig parse_convergence_config(const std::string& text) {
    json j = parse_json(text);
    Fields f(j, "");
    ConvergenceConfig c;
    parse_protocol_common(f, c.protocol);
    c.m_values = f.integers("m", {1});
    auto utilities = parse_utilities(f);
    if (utilities.size() != 1) {
        throw ConfigError("utility: convergence runs take a single utility");
    }
    c.protocol.utility = utilities.front();
    c.checkpoints = f.integers("checkpoints", c.checkpoints);
    std::sort(c.checkpoints.begin(), c.checkpoints.end());
    c.checkpoints.erase(std::unique(c.checkpoints.begin(), c.checkpoints.end()), c.checkpoints.end());
    if (f.has("fit")) {
        Fields fit = f.sub("fit");
        c.fit_decades = fit.number("decades", 2.0);
        if (fit.has("min_N0")) {
            c.fit_min_n0 = fit.integer("min_N0");
        }
        fit.finish();
    }
    c.trials = f.integer("trials", 50);
    c.seed = f.unsigned64("seed", 1);
    f.finish();

    if (c.trials < 1) {
        throw ConfigError("trials: must be at least 1");
    }
    if (!(c.fit_decades > 0.0)) {
        throw ConfigError("fit.decades: must be positive");
    }
    if (c.fit_min_n0 && (*c.fit_min_n0 < 1 || *c.fit_min_n0 > c.checkpoints.back())) {
        throw ConfigError("fit.min_N0: must lie between 1 and the last checkpoint");
    }
    for (int n : c.checkpoints) {
        for (int m : c.m_values) {
            if (n < 1 || n % m != 0) {
                throw ConfigError("checkpoints: " + std::to_string(n) + " is not a positive multiple of m = " +
                                  std::to_string(m));
            }
        }
    }
    ProtocolConfig p = c.protocol;
    p.checkpoints = c.checkpoints;
    check_protocol(p, c.m_values, c.checkpoints.back());
    return c;
}

}  // namespace qfunc::cli
