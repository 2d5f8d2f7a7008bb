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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfunc/chernoff.h"
#include "qfunc/cli.h"
#include "qfunc/errors.h"
#include "qfunc/numerics.h"

namespace qfunc::cli {

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string_view bound_name(BoundKind b) {
    switch (b) {
        case BoundKind::PhaseGate:
            return "phase_gate";
        case BoundKind::RandomError:
            return "random_error";
        case BoundKind::Dephasing:
            return "dephasing";
        case BoundKind::DephasingSmallEps:
            return "dephasing_small_eps";
        case BoundKind::ClassicalPhaseGate:
            break;
    }
    return "classical_phase_gate";
}

void set_variable(ChernoffConfig& c, const std::string& name, double v) {
    if (name == "theta") {
        c.theta = v;
    } else if (name == "eps") {
        c.eps = v;
    } else if (name == "alpha") {
        c.alpha = v;
    } else if (name == "beta") {
        c.beta = v;
    } else if (name == "w") {
        c.w = v;
    } else if (name == "tau") {
        c.tau = v;
    }
}

ChernoffResult evaluate_bound(const ChernoffConfig& c, int n) {
    auto quantum = [&](const Channel& ideal, const Channel& faulty) {
        if (c.optimize_input) {
            return optimize_input_state(ideal, faulty, n).bound;
        }
        auto in = DensityMatrix::pure(c.alpha, c.beta);
        return quantum_chernoff_bound(iterate_channel(faulty, in, n), iterate_channel(ideal, in, n), n);
    };
    switch (c.bound) {
        case BoundKind::PhaseGate:
            return quantum(PhaseGate{{c.theta}}, PhaseGate{{c.theta + c.eps}});
        case BoundKind::RandomError:
            return quantum(PhaseGate{{c.theta}},
                           AveragedPhaseGate{{c.theta}, ErrorDistribution::uniform(c.w, c.quadrature_nodes),
                                             c.fresh_error_per_application});
        case BoundKind::Dephasing:
            return dephasing_qcb(c.tau, c.eps, n);
        case BoundKind::DephasingSmallEps: {
            ChernoffResult r;
            r.iterations = n;
            r.xi = n * dephasing_qcb_small_eps(c.tau, c.eps, n);
            r.s_min = std::nan("");
            return r;
        }
        case BoundKind::ClassicalPhaseGate:
            break;
    }
    return classical_chernoff_phase_gate(c.theta, c.eps, n);
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

double sem_of(const std::vector<double>& v) {
    if (v.size() < 2) {
        return 0.0;
    }
    double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("cannot write output file '" + path + "'");
    }
    out << contents;
    if (!out.flush()) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

void write_meta(const std::string& out_path, const std::string& command, const std::string& config_text,
                std::optional<std::uint64_t> seed, std::optional<int> trials) {
    nlohmann::json meta;
    meta["command"] = command;
    meta["version"] = kVersion;
    meta["config"] = nlohmann::json::parse(config_text);
    if (seed) {
        meta["seed"] = *seed;
    }
    if (trials) {
        meta["trials"] = *trials;
    }
    write_file(out_path + ".meta.json", meta.dump(2) + "\n");
}

struct Flags {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    unsigned threads = 1;
};

int trials_override(const Flags& flags, int configured) {
    if (!flags.trials) {
        return configured;
    }
    if (*flags.trials < 1) {
        throw ConfigError("--trials: must be at least 1");
    }
    return *flags.trials;
}

void dispatch_checked(const std::string& command, const Flags& flags) {
    std::string text = read_file(flags.config);
    std::ostringstream csv;
    if (command == "chernoff") {
        auto cfg = parse_chernoff_config(text);
        run_chernoff(cfg, csv);
        write_file(flags.out, csv.str());
        write_meta(flags.out, command, text, std::nullopt, std::nullopt);
    } else if (command == "certify") {
        auto cfg = parse_certify_config(text);
        cfg.trials = trials_override(flags, cfg.trials);
        if (flags.seed) {
            cfg.seed = *flags.seed;
        }
        run_certify(cfg, flags.threads, csv);
        write_file(flags.out, csv.str());
        write_meta(flags.out, command, text, cfg.seed, cfg.trials);
    } else {
        auto cfg = parse_convergence_config(text);
        cfg.trials = trials_override(flags, cfg.trials);
        if (flags.seed) {
            cfg.seed = *flags.seed;
        }
        std::ostringstream fit;
        run_convergence(cfg, flags.threads, csv, fit);
        write_file(flags.out, csv.str());
        write_file(flags.out + ".fit.csv", fit.str());
        write_meta(flags.out, command, text, cfg.seed, cfg.trials);
    }
}

// Parameter errors surfacing mid-run (tau <= 0 in a sweep, say) still come
// from the config.
void dispatch(const std::string& command, const Flags& flags) {
    try {
        dispatch_checked(command, flags);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

void run_chernoff(const ChernoffConfig& cfg, std::ostream& csv) {
    csv << "bound,sweep_variable,sweep_value,series_variable,series_value,N,xi,xi_per_N,s_min\n";
    std::vector<double> series = cfg.series_values;
    if (cfg.series_variable.empty()) {
        series = {std::nan("")};
    }
    for (double sv : series) {
        for (int n : cfg.iterations) {
            for (double x : cfg.sweep_values) {
                ChernoffConfig c = cfg;
                if (!cfg.series_variable.empty()) {
                    set_variable(c, cfg.series_variable, sv);
                }
                set_variable(c, cfg.sweep_variable, x);
                ChernoffResult r = evaluate_bound(c, n);
                csv << bound_name(cfg.bound) << ',' << cfg.sweep_variable << ',' << fmt(x) << ','
                    << cfg.series_variable << ',' << (cfg.series_variable.empty() ? "" : fmt(sv)) << ',' << n << ','
                    << fmt(r.xi) << ',' << fmt(r.per_iteration()) << ',' << fmt(r.s_min) << '\n';
            }
        }
    }
}

void run_certify(const CertifyConfig& cfg, unsigned threads, std::ostream& csv) {
    csv << "x_c,m,utility,criterion,success,stderr,trials\n";
    std::vector<SweepPoint> points;
    for (double xc : cfg.centers) {
        for (Criterion c : cfg.criteria) {
            points.push_back({Spec{xc, cfg.half_width}, c});
        }
    }
    for (UtilityKind u : cfg.utilities) {
        for (int m : cfg.m_values) {
            ProtocolConfig p = cfg.protocol;
            p.m = m;
            p.utility = u;
            auto est = success_curve(p, points, cfg.hpd, cfg.trials, cfg.seed, threads);
            for (std::size_t k = 0; k < points.size(); ++k) {
                csv << fmt(points[k].spec.center) << ',' << m << ',' << to_string(u) << ','
                    << to_string(points[k].criterion) << ',' << fmt(est[k].estimate) << ','
                    << fmt(est[k].standard_error) << ',' << est[k].trials << '\n';
            }
        }
    }
}

void run_convergence(const ConvergenceConfig& cfg, unsigned threads, std::ostream& csv, std::ostream& fit) {
    csv << "m,N0,mean_posterior_mean,mean_posterior_variance,sem_posterior_mean,sem_posterior_variance,"
           "completed,trials\n";
    fit << "m,prefactor,exponent,log_prefactor_stderr,exponent_stderr,points,fit_min_N0,fit_max_N0,"
           "fixed_slope_prefactor,fixed_slope_log_stderr\n";
    const int top = cfg.checkpoints.back();
    const double window_lo = cfg.fit_min_n0 ? *cfg.fit_min_n0 : top / std::pow(10.0, cfg.fit_decades);
    for (int m : cfg.m_values) {
        ProtocolConfig p = cfg.protocol;
        p.m = m;
        p.n0 = top;
        p.checkpoints = cfg.checkpoints;
        std::vector<ProtocolRun> runs(cfg.trials);
        parallel_for(runs.size(), threads, [&](std::size_t i) {
            runs[i] = run_protocol(p, derive_seed(cfg.seed, i));
            runs[i].filter.reset();
            runs[i].chosen.clear();
        });
        std::vector<double> fit_x, fit_y;
        for (std::size_t k = 0; k < cfg.checkpoints.size(); ++k) {
            std::vector<double> means, vars;
            for (const auto& r : runs) {
                if (!r.impoverished) {
                    means.push_back(r.checkpoints[k].mean);
                    vars.push_back(r.checkpoints[k].variance);
                }
            }
            double mv = means.empty() ? std::nan("") : mean_of(vars);
            csv << m << ',' << cfg.checkpoints[k] << ',' << fmt(means.empty() ? std::nan("") : mean_of(means))
                << ',' << fmt(mv) << ',' << fmt(sem_of(means)) << ',' << fmt(sem_of(vars)) << ','
                << means.size() << ',' << cfg.trials << '\n';
            if (!means.empty() && cfg.checkpoints[k] >= window_lo && mv > 0.0) {
                fit_x.push_back(cfg.checkpoints[k]);
                fit_y.push_back(mv);
            }
        }
        if (fit_x.size() < 3) {
            throw std::runtime_error("power-law fit needs at least three checkpoints in the fit window");
        }
        PowerLawFit pl = fit_power_law(fit_x, fit_y);
        // Prefactor with the exponent pinned to -1: geometric mean of N0 * variance.
        std::vector<double> logs;
        for (std::size_t i = 0; i < fit_x.size(); ++i) {
            logs.push_back(std::log(fit_x[i] * fit_y[i]));
        }
        fit << m << ',' << fmt(pl.prefactor) << ',' << fmt(pl.exponent) << ',' << fmt(pl.log_prefactor_stderr)
            << ',' << fmt(pl.exponent_stderr) << ',' << pl.points << ',' << fmt(fit_x.front()) << ','
            << fmt(fit_x.back()) << ',' << fmt(std::exp(mean_of(logs))) << ',' << fmt(sem_of(logs)) << '\n';
    }
}

int main_entry(int argc, char** argv) {
    CLI::App app{"Quantum functional testing of single-qubit channels"};
    app.set_version_flag("--version", std::string("qfunc ") + kVersion);
    app.require_subcommand(1);

    Flags flags;
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<CLI::App*> subs;
    const std::pair<const char*, const char*> commands[] = {
        {"chernoff", "Chernoff-bound sweeps"},
        {"certify", "Certification success-probability sweeps"},
        {"convergence", "Posterior-variance convergence runs with power-law fits"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config, "JSON config file")->required();
        sub->add_option("--out", flags.out, "output CSV path")->required();
        sub->add_option("--seed", seed, "master seed (overrides the config)");
        sub->add_option("--trials", trials, "trial count (overrides the config)");
        sub->add_option("--threads", flags.threads, "worker threads (0 = all cores)");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfigError;
    }

    std::string command;
    for (CLI::App* sub : subs) {
        if (sub->parsed()) {
            command = sub->get_name();
            if (sub->count("--seed")) {
                flags.seed = seed;
            }
            if (sub->count("--trials")) {
                flags.trials = trials;
            }
        }
    }

    try {
        dispatch(command, flags);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}

}  // namespace qfunc::cli
