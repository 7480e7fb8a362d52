// Copyright 2026 The nmdecoh Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// nmdecoh: sweeps, analyses and self-verification for N atoms in
// independent detuned Lorentzian reservoirs.
//
//   nmdecoh sweep --preset fig3 --state w4 -o fig3_w4.csv
//   nmdecoh analyze --input fig3_w4.csv --check revival
//   nmdecoh verify
//
// Exit codes: 0 success, 1 usage error, 2 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nmdecoh/analysis.hpp"
#include "nmdecoh/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;

struct SweepArgs {
    std::string preset;
    std::string state;
    std::string config_path;
    std::optional<double> lambda;
    std::optional<double> delta;
    std::optional<double> tmax;
    std::optional<int> points;
    std::string emit;
    std::string output;
};

struct AnalyzeArgs {
    std::string input;
    std::string check;
    std::string preset = "fig1";
};

int run_sweep_command(const SweepArgs &a) {
    nmdecoh::SweepConfig config;
    if (!a.preset.empty()) {
        config = nmdecoh::preset_config(a.preset, "");
    }
    config.state.clear();
    if (!a.config_path.empty()) {
        std::ifstream in(a.config_path);
        if (!in) {
            throw std::invalid_argument("cannot read config file '" + a.config_path + "'");
        }
        nmdecoh::apply_config_file(in, config);
    }
    if (!a.state.empty()) {
        config.state = a.state;
    }
    if (a.lambda) {
        config.lambda_over_gamma0 = *a.lambda;
    }
    if (a.delta) {
        config.delta_over_gamma0 = *a.delta;
    }
    if (a.tmax) {
        config.t_max = *a.tmax;
    }
    if (a.points) {
        config.n_points = *a.points;
    }
    if (!a.emit.empty()) {
        config.emit = nmdecoh::parse_emit(a.emit);
    }
    if (!a.output.empty()) {
        config.output_path = a.output;
    }
    if (config.state.empty()) {
        throw std::invalid_argument("no initial state given (use --state or a config file)");
    }
    if (config.output_path.empty()) {
        throw std::invalid_argument("no output path given (use -o or a config file)");
    }
    config.validate();

    if (config.output_path == "-") {
        nmdecoh::write_csv(nmdecoh::run_sweep(config), std::cout);
        return kExitOk;
    }
    nmdecoh::run_sweep_to_file(config);
    return kExitOk;
}

int run_analyze_command(const AnalyzeArgs &a) {
    const nmdecoh::SweepTable table = nmdecoh::read_csv(a.input);
    if (a.check == "revival") {
        const auto revivals = nmdecoh::revival_metrics(table);
        std::printf("revivals: %zu\n", revivals.size());
        std::printf("t_min,t_peak,amplitude\n");
        for (const auto &r : revivals) {
            std::printf("%.12g,%.12g,%.12g\n", r.t_min, r.t_peak, r.amplitude);
        }
    } else if (a.check == "gamma-sign") {
        const auto fraction = nmdecoh::gamma_sign_correlation(table);
        if (fraction) {
            std::printf("gamma-sign correlation: %.12g\n", *fraction);
        } else {
            std::printf("gamma-sign correlation: missing (no qualifying points)\n");
        }
    } else if (a.check == "robustness") {
        const auto grid = table.times();
        const auto rep = nmdecoh::robustness_ordering(a.preset, grid);
        std::printf("ranking over %zu points%s:\n", grid.size(), rep.tied ? " [tied]" : "");
        std::printf("  state    half_life       mean_normalized\n");
        for (const auto kind : rep.ranking) {
            std::printf("  %-8s %-15.9g %.9g\n", std::string(nmdecoh::name(kind)).c_str(), rep.half_life.at(kind),
                        rep.mean_normalized.at(kind));
        }
        std::printf("cluster dominates at every point: %s\n", rep.cluster_dominates ? "yes" : "no");
        std::printf("worst margin: %.12g at t=%.12g vs %s\n", rep.worst_margin, rep.worst_margin_t,
                    std::string(nmdecoh::name(rep.worst_competitor)).c_str());
    } else {
        throw std::invalid_argument("unknown check '" + a.check + "'");
    }
    return kExitOk;
}

int run_verify_command() {
    bool ok = true;
    for (const auto &c : nmdecoh::run_verification()) {
        std::printf("[%s] %s: %.3e (tolerance %.1e)\n", c.passed() ? "PASS" : "FAIL", c.name.c_str(), c.value,
                    c.tolerance);
        ok = ok && c.passed();
    }
    return ok ? kExitOk : kExitVerify;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entanglement dynamics of N atoms in independent detuned Lorentzian reservoirs"};
    app.require_subcommand(1);

    SweepArgs sweep_args;
    auto *sweep = app.add_subcommand("sweep", "Write E_a(t), E_r(t) and nu(t) for one initial state as CSV");
    sweep->add_option("--preset", sweep_args.preset, "Regime preset")
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"}));
    sweep->add_option("--state", sweep_args.state, "Initial state: w4, w5, w6, ghz4, dicke4, cluster4");
    sweep->add_option("--config", sweep_args.config_path, "Key-value config file; flags override its values");
    sweep->add_option("--lambda", sweep_args.lambda, "Spectral width in units of gamma0");
    sweep->add_option("--delta", sweep_args.delta, "Detuning in units of gamma0");
    sweep->add_option("--tmax", sweep_args.tmax, "End of the time window in units of 1/gamma0");
    sweep->add_option("--points", sweep_args.points, "Number of grid points (>= 2)");
    sweep->add_option("--emit", sweep_args.emit, "Comma list from nu,gamma,Ea,Er,per_bipartition");
    sweep->add_option("-o,--output", sweep_args.output, "Output CSV path ('-' for stdout)");

    AnalyzeArgs analyze_args;
    auto *analyze = app.add_subcommand("analyze", "Run a derived analysis on a sweep CSV");
    analyze->add_option("--input", analyze_args.input, "Sweep CSV")->required();
    analyze->add_option("--check", analyze_args.check, "Analysis to run")
        ->required()
        ->check(CLI::IsMember({"revival", "gamma-sign", "robustness"}));
    analyze->add_option("--preset", analyze_args.preset, "Regime used by the robustness check (default fig1)")
        ->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"}));

    auto *verify = app.add_subcommand("verify", "Run the oracle cross-checks; exit 2 on any tolerance breach");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sweep) {
            return run_sweep_command(sweep_args);
        }
        if (*analyze) {
            return run_analyze_command(analyze_args);
        }
        if (*verify) {
            return run_verify_command();
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
