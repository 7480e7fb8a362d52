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
/**
 * @file
 * Time sweeps of the atom and reservoir entanglement, regime presets, the
 * flat key-value config format and the CSV time-series format.
 *
 * Times and rates are expressed in units of gamma0 (gamma0 = 1).
 */
#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amplitude.hpp"
#include "entanglement.hpp"
#include "states.hpp"

namespace nmdecoh {

/// Columns a sweep computes. Base CSV columns that are not emitted are
/// written as empty fields; the header never changes.
struct EmitSet {
    bool nu = true;
    bool gamma = false;
    bool Ea = true;
    bool Er = true;
    bool per_bipartition = false;

    bool operator==(const EmitSet &) const = default;
};

/// Parses a comma-separated subset of {nu, gamma, Ea, Er, per_bipartition}.
inline EmitSet parse_emit(std::string_view list) {
    EmitSet e{false, false, false, false, false};
    std::string item;
    std::istringstream in{std::string(list)};
    bool any = false;
    while (std::getline(in, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto l = item.find_last_not_of(" \t");
        item = b == std::string::npos ? "" : item.substr(b, l - b + 1);
        if (item == "nu") {
            e.nu = true;
        } else if (item == "gamma") {
            e.gamma = true;
        } else if (item == "Ea") {
            e.Ea = true;
        } else if (item == "Er") {
            e.Er = true;
        } else if (item == "per_bipartition") {
            e.per_bipartition = true;
        } else {
            throw std::invalid_argument("emit: unknown column group '" + item + "'");
        }
        any = true;
    }
    if (!any) {
        throw std::invalid_argument("emit: empty column list");
    }
    return e;
}

inline std::string to_string(const EmitSet &e) {
    std::string s;
    auto add = [&](bool on, const char *n) {
        if (on) {
            s += s.empty() ? "" : ",";
            s += n;
        }
    };
    add(e.nu, "nu");
    add(e.gamma, "gamma");
    add(e.Ea, "Ea");
    add(e.Er, "Er");
    add(e.per_bipartition, "per_bipartition");
    return s;
}

struct SweepConfig {
    std::string state = "w4";
    double lambda_over_gamma0 = 10.0;
    double delta_over_gamma0 = 0.0;
    double t_max = 5.0;
    int n_points = 2000;
    std::string output_path;
    EmitSet emit{};

    [[nodiscard]] ReservoirParams params() const { return {1.0, lambda_over_gamma0, delta_over_gamma0, {}}; }

    void validate() const {
        if (!parse_state_kind(state)) {
            throw std::invalid_argument("unknown state '" + state + "' (expected w4, w5, w6, ghz4, dicke4 or cluster4)");
        }
        if (!(lambda_over_gamma0 > 0.0) || !std::isfinite(lambda_over_gamma0)) {
            throw std::invalid_argument("lambda_over_gamma0 must be a finite value > 0");
        }
        if (!(delta_over_gamma0 >= 0.0) || !std::isfinite(delta_over_gamma0)) {
            throw std::invalid_argument("delta_over_gamma0 must be a finite value >= 0");
        }
        if (!(t_max > 0.0) || !std::isfinite(t_max)) {
            throw std::invalid_argument("t_max must be a finite value > 0");
        }
        if (n_points < 2) {
            throw std::invalid_argument("n_points must be >= 2");
        }
    }
};

/// Regime presets. Only lambda and delta come from the physics; the time
/// windows are chosen so each regime's features fit in the sweep.
struct Preset {
    std::string_view name;
    double lambda;
    double delta;
    double t_max;
    bool gamma;
};

inline constexpr int kDefaultPoints = 2000;

inline constexpr std::array kPresets{
    Preset{"fig1", 10.0, 0.0, 5.0, false},   Preset{"fig2", 0.1, 0.0, 100.0, false},
    Preset{"fig3", 0.01, 0.0, 1000.0, false}, Preset{"fig4", 0.1, 0.8, 200.0, false},
    Preset{"fig5", 0.01, 0.08, 2000.0, false}, Preset{"fig6", 0.01, 0.0, 1000.0, true},
};

inline const Preset &find_preset(std::string_view name) {
    for (const auto &p : kPresets) {
        if (p.name == name) {
            return p;
        }
    }
    throw std::invalid_argument("unknown preset '" + std::string(name) + "' (expected fig1..fig6)");
}

inline SweepConfig preset_config(std::string_view preset, std::string_view state) {
    const Preset &p = find_preset(preset);
    SweepConfig c;
    c.state = std::string(state);
    c.lambda_over_gamma0 = p.lambda;
    c.delta_over_gamma0 = p.delta;
    c.t_max = p.t_max;
    c.n_points = kDefaultPoints;
    c.emit.gamma = p.gamma;
    return c;
}

inline ReservoirParams preset_params(std::string_view preset) {
    const Preset &p = find_preset(preset);
    return {1.0, p.lambda, p.delta, {}};
}

/**
 * Reads `key = value` lines into `config`. Keys are the SweepConfig field
 * names; '#' starts a comment. Unknown keys and malformed values throw.
 */
inline void apply_config_file(std::istream &in, SweepConfig &config) {
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            return std::string{};
        }
        return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto number = [&]() {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(value, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used == 0 || used != value.size()) {
                throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad number for " + key);
            }
            return v;
        };
        if (key == "state") {
            config.state = value;
        } else if (key == "lambda_over_gamma0") {
            config.lambda_over_gamma0 = number();
        } else if (key == "delta_over_gamma0") {
            config.delta_over_gamma0 = number();
        } else if (key == "t_max") {
            config.t_max = number();
        } else if (key == "n_points") {
            const double v = number();
            if (v != std::floor(v)) {
                throw std::invalid_argument("config line " + std::to_string(lineno) + ": n_points must be an integer");
            }
            config.n_points = static_cast<int>(v);
        } else if (key == "output_path") {
            config.output_path = value;
        } else if (key == "emit") {
            config.emit = parse_emit(value);
        } else {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
}

/// One time point. Empty optionals are columns that were not computed,
/// or gamma_t where the rate is undefined.
struct SweepRow {
    double t = 0.0;
    std::optional<double> nu_re, nu_im, nu_abs2;
    std::optional<double> gamma_t;
    std::optional<double> E_a, E_r;
    std::vector<double> per_bipartition;  ///< atom-side E(i), same order as SweepTable::bipartition_keys
};

struct SweepTable {
    EmitSet emitted{};
    std::vector<std::string> bipartition_keys;
    std::vector<SweepRow> rows;

    [[nodiscard]] std::vector<double> times() const {
        std::vector<double> t;
        t.reserve(rows.size());
        for (const auto &r : rows) {
            t.push_back(r.t);
        }
        return t;
    }
};

/// t_i = t_max * i / (n - 1), i = 0..n-1.
inline std::vector<double> uniform_grid(double t_max, int n_points) {
    std::vector<double> t(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        t[static_cast<std::size_t>(i)] = t_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
    }
    return t;
}

/// Entanglement of the atoms (first) and reservoirs (second) at a given amplitude.
inline std::pair<EntanglementReport, EntanglementReport> subsystem_entanglement(InitialStateKind kind,
                                                                                const AmplitudeState &amp) {
    const PureState psi = evolved_state(kind, amp);
    const int n = atom_count(kind);
    const Labels atoms = atom_labels(n);
    const Labels reservoirs = reservoir_labels(n);
    return {measure(partial_trace(psi, atoms)), measure(partial_trace(psi, reservoirs))};
}

inline SweepTable run_sweep(const SweepConfig &config) {
    config.validate();
    const InitialStateKind kind = *parse_state_kind(config.state);
    const ReservoirParams params = config.params();
    const ChiParam c = chi(params);
    const int n = atom_count(kind);
    const Labels atoms = atom_labels(n);
    const Labels reservoirs = reservoir_labels(n);

    SweepTable table;
    table.emitted = config.emit;
    if (config.emit.per_bipartition) {
        for (int m = 1; m <= n / 2; ++m) {
            for (const auto &cut : enumerate_bipartitions(n, m)) {
                table.bipartition_keys.push_back(cut.key());
            }
        }
    }
    const bool need_atoms = config.emit.Ea || config.emit.per_bipartition;
    for (const double t : uniform_grid(config.t_max, config.n_points)) {
        SweepRow row;
        row.t = t;
        const AmplitudeState amp = nu(t, params, c);
        if (config.emit.nu) {
            row.nu_re = amp.nu.real();
            row.nu_im = amp.nu.imag();
            row.nu_abs2 = amp.nu.real() * amp.nu.real() + amp.nu.imag() * amp.nu.imag();
        }
        if (config.emit.gamma) {
            row.gamma_t = decay_rate(t, params);
        }
        if (need_atoms || config.emit.Er) {
            const PureState psi = evolved_state(kind, amp);
            if (need_atoms) {
                const EntanglementReport ra = measure(partial_trace(psi, atoms));
                if (config.emit.Ea) {
                    row.E_a = ra.total;
                }
                if (config.emit.per_bipartition) {
                    for (const auto &[cut, e] : ra.per_bipartition) {
                        row.per_bipartition.push_back(e);
                    }
                }
            }
            if (config.emit.Er) {
                row.E_r = measure(partial_trace(psi, reservoirs)).total;
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline constexpr std::string_view kCsvHeader = "t,nu_re,nu_im,nu_abs2,gamma_t,E_a,E_r";

namespace detail {

inline void put_number(std::ostream &out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out << buf;
}

inline void put_field(std::ostream &out, const std::optional<double> &v) {
    out << ',';
    if (v) {
        put_number(out, *v);
    }
}

} // namespace detail

inline void write_csv(const SweepTable &table, std::ostream &out) {
    out << kCsvHeader;
    for (const auto &k : table.bipartition_keys) {
        out << ",E_b_" << k;
    }
    out << '\n';
    for (const auto &r : table.rows) {
        detail::put_number(out, r.t);
        detail::put_field(out, r.nu_re);
        detail::put_field(out, r.nu_im);
        detail::put_field(out, r.nu_abs2);
        detail::put_field(out, r.gamma_t);
        detail::put_field(out, r.E_a);
        detail::put_field(out, r.E_r);
        for (const double e : r.per_bipartition) {
            out << ',';
            detail::put_number(out, e);
        }
        out << '\n';
    }
}

inline void write_csv(const SweepTable &table, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_csv(table, out);
    if (!out.flush()) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

/**
 * Runs the sweep described by `config` and writes it to config.output_path.
 * The path is opened before any computation so an unwritable destination
 * fails fast.
 */
inline SweepTable run_sweep_to_file(const SweepConfig &config) {
    config.validate();
    if (config.output_path.empty()) {
        throw std::invalid_argument("no output path given");
    }
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + config.output_path + "' for writing");
    }
    SweepTable table = run_sweep(config);
    write_csv(table, out);
    if (!out.flush()) {
        throw std::runtime_error("write to '" + config.output_path + "' failed");
    }
    return table;
}

/// Parses CSV written by write_csv. A base column counts as emitted when
/// at least one row has a value in it.
inline SweepTable read_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("csv: empty input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line.rfind(kCsvHeader, 0) != 0) {
        throw std::invalid_argument("csv: header must start with '" + std::string(kCsvHeader) + "'");
    }
    SweepTable table;
    table.emitted = {false, false, false, false, false};
    {
        std::istringstream hs(line.substr(kCsvHeader.size()));
        std::string col;
        std::getline(hs, col, ',');  // empty piece before the first extra comma
        while (std::getline(hs, col, ',')) {
            if (col.rfind("E_b_", 0) != 0) {
                throw std::invalid_argument("csv: unexpected column '" + col + "'");
            }
            table.bipartition_keys.push_back(col.substr(4));
        }
        table.emitted.per_bipartition = !table.bipartition_keys.empty();
    }
    const std::size_t ncols = 7 + table.bipartition_keys.size();
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (fields.size() != ncols) {
            throw std::invalid_argument("csv line " + std::to_string(lineno) + ": expected " + std::to_string(ncols) +
                                        " fields");
        }
        auto parse = [&](const std::string &f) -> std::optional<double> {
            if (f.empty()) {
                return std::nullopt;
            }
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(f, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != f.size() || used == 0) {
                throw std::invalid_argument("csv line " + std::to_string(lineno) + ": bad number '" + f + "'");
            }
            return v;
        };
        SweepRow r;
        const auto t = parse(fields[0]);
        if (!t) {
            throw std::invalid_argument("csv line " + std::to_string(lineno) + ": missing t");
        }
        r.t = *t;
        r.nu_re = parse(fields[1]);
        r.nu_im = parse(fields[2]);
        r.nu_abs2 = parse(fields[3]);
        r.gamma_t = parse(fields[4]);
        r.E_a = parse(fields[5]);
        r.E_r = parse(fields[6]);
        for (std::size_t k = 7; k < ncols; ++k) {
            const auto v = parse(fields[k]);
            if (!v) {
                throw std::invalid_argument("csv line " + std::to_string(lineno) + ": missing bipartition value");
            }
            r.per_bipartition.push_back(*v);
        }
        table.emitted.nu = table.emitted.nu || r.nu_re.has_value();
        table.emitted.gamma = table.emitted.gamma || r.gamma_t.has_value();
        table.emitted.Ea = table.emitted.Ea || r.E_a.has_value();
        table.emitted.Er = table.emitted.Er || r.E_r.has_value();
        table.rows.push_back(std::move(r));
    }
    return table;
}

inline SweepTable read_csv(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    return read_csv(in);
}

} // namespace nmdecoh
