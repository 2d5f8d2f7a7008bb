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

#include "qfunc/cli.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

using namespace qfunc;
using namespace qfunc::cli;

namespace {

std::string golden_path(const std::string& name) { return std::string(QFUNC_GOLDEN_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Set QFUNC_UPDATE_GOLDEN=1 to rewrite the expected files after an intended change.
void expect_golden(const std::string& name, const std::string& actual) {
    std::string path = golden_path(name);
    if (std::getenv("QFUNC_UPDATE_GOLDEN")) {
        std::ofstream(path, std::ios::binary) << actual;
        return;
    }
    ASSERT_TRUE(std::filesystem::exists(path)) << "missing golden file " << path;
    ASSERT_EQ(slurp(path), actual) << "golden mismatch for " << name;
}

int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qfunc");
    std::vector<char*> argv;
    for (auto& a : args) {
        argv.push_back(a.data());
    }
    return main_entry(static_cast<int>(argv.size()), argv.data());
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("qfunc_cli_test_" + name)).string();
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string p = temp_path(name);
    std::ofstream(p) << text;
    return p;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

}  // namespace

TEST(cli, chernoff_config_basics) {
    auto c = parse_chernoff_config(slurp(golden_path("chernoff_classical.json")));
    ASSERT_EQ(c.bound, BoundKind::ClassicalPhaseGate);
    ASSERT_EQ(c.sweep_values.size(), 7u);
    ASSERT_DOUBLE_EQ(c.sweep_values.back(), M_PI);
    ASSERT_DOUBLE_EQ(c.eps, 0.2);
    ASSERT_EQ(c.iterations, (std::vector<int>{1, 2, 3}));
}

TEST(cli, step_ranges_include_the_stop_value) {
    auto c = parse_chernoff_config(R"({"bound": "dephasing", "sweep": {"variable": "tau", "start": 0.1, "stop": 0.5, "step": 0.1}})");
    ASSERT_EQ(c.sweep_values.size(), 5u);
    ASSERT_NEAR(c.sweep_values.back(), 0.5, 1e-12);
}

TEST(cli, config_errors) {
    // Unknown key.
    ASSERT_THROW(parse_chernoff_config(R"({"bound": "dephasing", "sweep": {"variable": "tau", "values": [1]}, "sweeep": 1})"),
                 ConfigError);
    // Empty range.
    ASSERT_THROW(parse_chernoff_config(R"({"bound": "dephasing", "sweep": {"variable": "tau", "values": []}})"),
                 ConfigError);
    ASSERT_THROW(parse_chernoff_config(R"({"bound": "dephasing", "sweep": {"variable": "tau", "start": 1, "stop": 0, "step": 0.1}})"),
                 ConfigError);
    // Variable that the bound does not have.
    ASSERT_THROW(parse_chernoff_config(R"({"bound": "dephasing", "sweep": {"variable": "theta", "values": [1]}})"),
                 ConfigError);
    ASSERT_THROW(parse_chernoff_config("{not json"), ConfigError);
    ASSERT_THROW(parse_chernoff_config(R"({"bound": "amplitude", "sweep": {"variable": "tau", "values": [1]}})"),
                 ConfigError);

    std::string certify = slurp(golden_path("certify_small.json"));
    ASSERT_NO_THROW(parse_certify_config(certify));
    auto bad_trials = certify;
    bad_trials.replace(bad_trials.find("\"trials\": 4"), 11, "\"trials\": 0");
    ASSERT_THROW(parse_certify_config(bad_trials), ConfigError);
    auto bad_m = certify;
    bad_m.replace(bad_m.find("\"n0\": 24"), 8, "\"n0\": 25");
    ASSERT_THROW(parse_certify_config(bad_m), ConfigError);
    auto typo = certify;
    typo.replace(typo.find("\"particles\""), 11, "\"particle\"");
    ASSERT_THROW(parse_certify_config(typo), ConfigError);
}

TEST(cli, error_messages_name_the_field) {
    try {
        parse_chernoff_config(R"({"bound": "dephasing", "sweep": {"variable": "tau", "values": [1], "extra": 2}})");
        FAIL() << "expected a config error";
    } catch (const ConfigError& e) {
        ASSERT_NE(std::string(e.what()).find("sweep.extra"), std::string::npos) << e.what();
    }
}

TEST(cli, chernoff_csv_header) {
    std::ostringstream out;
    run_chernoff(parse_chernoff_config(slurp(golden_path("chernoff_dephasing.json"))), out);
    ASSERT_EQ(first_line(out.str()), "bound,sweep_variable,sweep_value,series_variable,series_value,N,xi,xi_per_N,s_min");
}

TEST(cli, chernoff_golden_files) {
    for (const char* name : {"chernoff_dephasing", "chernoff_classical", "chernoff_random_error"}) {
        std::ostringstream out;
        run_chernoff(parse_chernoff_config(slurp(golden_path(std::string(name) + ".json"))), out);
        expect_golden(std::string(name) + ".csv", out.str());
    }
}

TEST(cli, certify_golden_file) {
    auto cfg = parse_certify_config(slurp(golden_path("certify_small.json")));
    std::ostringstream out;
    run_certify(cfg, 1, out);
    ASSERT_EQ(first_line(out.str()), "x_c,m,utility,criterion,success,stderr,trials");
    expect_golden("certify_small.csv", out.str());
    // 3 centers x 2 criteria x 2 batch lengths plus the header.
    std::string text = out.str();
    ASSERT_EQ(std::count(text.begin(), text.end(), '\n'), 13);
}

TEST(cli, certify_output_ignores_thread_count) {
    auto cfg = parse_certify_config(slurp(golden_path("certify_small.json")));
    std::ostringstream one, many;
    run_certify(cfg, 1, one);
    run_certify(cfg, 4, many);
    ASSERT_EQ(one.str(), many.str());
}

TEST(cli, convergence_golden_file) {
    auto cfg = parse_convergence_config(slurp(golden_path("convergence_small.json")));
    std::ostringstream out, fit;
    run_convergence(cfg, 1, out, fit);
    ASSERT_EQ(first_line(out.str()),
              "m,N0,mean_posterior_mean,mean_posterior_variance,sem_posterior_mean,sem_posterior_variance,completed,"
              "trials");
    ASSERT_EQ(first_line(fit.str()),
              "m,prefactor,exponent,log_prefactor_stderr,exponent_stderr,points,fit_min_N0,fit_max_N0,"
              "fixed_slope_prefactor,fixed_slope_log_stderr");
    expect_golden("convergence_small.csv", out.str());
    expect_golden("convergence_small.fit.csv", fit.str());
}

TEST(cli, entry_point_exit_codes) {
    std::string out = temp_path("out.csv");
    ASSERT_EQ(run_cli({"chernoff", "--config", golden_path("chernoff_classical.json"), "--out", out}), kExitOk);
    std::string csv = slurp(out);
    ASSERT_FALSE(csv.empty());
    ASSERT_TRUE(std::filesystem::exists(out + ".meta.json"));
    ASSERT_NE(slurp(out + ".meta.json").find("\"version\""), std::string::npos);

    std::string bad = write_temp("bad.json", R"({"bound": "dephasing", "sweep": {"variable": "tau", "values": []}})");
    ASSERT_EQ(run_cli({"chernoff", "--config", bad, "--out", out}), kExitConfigError);
    ASSERT_EQ(run_cli({"chernoff", "--config", temp_path("does_not_exist.json"), "--out", out}), kExitConfigError);
    ASSERT_EQ(run_cli({"chernoff", "--out", out}), kExitConfigError);
    ASSERT_EQ(run_cli({"certify", "--config", golden_path("certify_small.json"), "--out", out, "--trials", "0"}),
              kExitConfigError);
}

TEST(cli, entry_point_is_byte_deterministic) {
    std::string a = temp_path("a.csv");
    std::string b = temp_path("b.csv");
    auto cfg = golden_path("certify_small.json");
    ASSERT_EQ(run_cli({"certify", "--config", cfg, "--out", a, "--trials", "2"}), kExitOk);
    ASSERT_EQ(run_cli({"certify", "--config", cfg, "--out", b, "--trials", "2", "--threads", "2"}), kExitOk);
    ASSERT_EQ(slurp(a), slurp(b));
    ASSERT_EQ(slurp(a + ".meta.json"), slurp(b + ".meta.json"));
}

TEST(cli, seed_flag_overrides_config) {
    std::string a = temp_path("seed_a.csv");
    std::string b = temp_path("seed_b.csv");
    auto cfg = golden_path("convergence_small.json");
    ASSERT_EQ(run_cli({"convergence", "--config", cfg, "--out", a, "--seed", "5"}), kExitOk);
    ASSERT_EQ(run_cli({"convergence", "--config", cfg, "--out", b}), kExitOk);
    ASSERT_EQ(slurp(a), slurp(b));
    ASSERT_TRUE(std::filesystem::exists(a + ".fit.csv"));
}

TEST(cli, fit_window_floor) {
    std::string base = slurp(golden_path("convergence_small.json"));
    ASSERT_FALSE(parse_convergence_config(base).fit_min_n0.has_value());
    auto with = [&](const std::string& fit) {
        std::string t = base;
        t.insert(t.rfind('}'), ", \"fit\": " + fit);
        return t;
    };
    auto cfg = parse_convergence_config(with(R"({"min_N0": 8})"));
    ASSERT_EQ(cfg.fit_min_n0, 8);
    std::ostringstream out, fit;
    run_convergence(cfg, 1, out, fit);
    std::istringstream rows(fit.str());
    std::string line;
    std::getline(rows, line);
    while (std::getline(rows, line)) {
        // points, fit_min_N0, fit_max_N0: 8 through 32.
        ASSERT_NE(line.find(",3,8,32,"), std::string::npos) << line;
    }
    ASSERT_THROW(parse_convergence_config(with(R"({"min_N0": 0})")), ConfigError);
    ASSERT_THROW(parse_convergence_config(with(R"({"min_N0": 64})")), ConfigError);
}
