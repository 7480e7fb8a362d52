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
 * Post-processing of sweeps: revival detection, the correspondence between
 * the sign of the decay rate and the direction of E_a, and the robustness
 * ranking of the four-atom initial states.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "sweep.hpp"

namespace nmdecoh {

inline constexpr double kRevivalHysteresis = 1e-3;

struct Revival {
    double t_min = 0.0;
    double t_peak = 0.0;
    double amplitude = 0.0;  ///< E(t_peak) - E(t_min)
    std::size_t i_min = 0;
    std::size_t i_peak = 0;
};

/**
 * Minimum -> maximum excursions of `values` that rise by more than
 * `hysteresis`. A minimum is confirmed once the curve climbs more than
 * `hysteresis` above it, and a maximum once the curve falls more than
 * `hysteresis` below it (or the series ends). Within a flat extremum the
 * first grid point is reported.
 */
inline std::vector<Revival> revival_metrics(std::span<const double> t, std::span<const double> values,
                                            double hysteresis = kRevivalHysteresis) {
    if (t.size() != values.size()) {
        throw std::invalid_argument("revival_metrics: time and value series differ in length");
    }
    std::vector<Revival> out;
    if (values.empty()) {
        return out;
    }
    bool rising = false;
    std::size_t ext = 0;
    std::size_t min_at = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double x = values[i];
        if (!rising) {
            if (x < values[ext]) {
                ext = i;
            } else if (x > values[ext] + hysteresis) {
                min_at = ext;
                rising = true;
                ext = i;
            }
        } else {
            if (x > values[ext]) {
                ext = i;
            } else if (x < values[ext] - hysteresis) {
                out.push_back({t[min_at], t[ext], values[ext] - values[min_at], min_at, ext});
                rising = false;
                ext = i;
            }
        }
    }
    if (rising) {
        out.push_back({t[min_at], t[ext], values[ext] - values[min_at], min_at, ext});
    }
    return out;
}

/// Revivals of E_a in a sweep.
inline std::vector<Revival> revival_metrics(const SweepTable &table, double hysteresis = kRevivalHysteresis) {
    if (!table.emitted.Ea) {
        throw std::invalid_argument("revival_metrics: sweep has no E_a column");
    }
    std::vector<double> t;
    std::vector<double> e;
    for (const auto &r : table.rows) {
        if (!r.E_a) {
            throw std::invalid_argument("revival_metrics: missing E_a value");
        }
        t.push_back(r.t);
        e.push_back(*r.E_a);
    }
    return revival_metrics(t, e, hysteresis);
}

struct GammaSignThresholds {
    double min_rate = 1e-3;    ///< |gamma(t)| in units of gamma0
    double min_ea = 1e-4;      ///< E_a
    double min_slope = 1e-6;   ///< |dE_a/dt| in units of gamma0
};

/**
 * Fraction of qualifying interior grid points where dE_a/dt (central
 * difference) and gamma(t) have opposite signs. A point qualifies when
 * gamma is defined and |gamma|, E_a and |dE_a/dt| exceed the thresholds.
 * Returns std::nullopt when no point qualifies.
 */
inline std::optional<double> gamma_sign_correlation(const SweepTable &table, const GammaSignThresholds &th = {}) {
    if (!table.emitted.gamma) {
        throw std::invalid_argument("gamma_sign_correlation: sweep has no gamma_t column");
    }
    if (!table.emitted.Ea) {
        throw std::invalid_argument("gamma_sign_correlation: sweep has no E_a column");
    }
    const auto &rows = table.rows;
    std::size_t qualifying = 0;
    std::size_t agreeing = 0;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        const auto &r = rows[i];
        if (!r.gamma_t || !r.E_a || !rows[i - 1].E_a || !rows[i + 1].E_a) {
            continue;
        }
        const double slope = (*rows[i + 1].E_a - *rows[i - 1].E_a) / (rows[i + 1].t - rows[i - 1].t);
        if (std::abs(*r.gamma_t) <= th.min_rate || *r.E_a <= th.min_ea || std::abs(slope) <= th.min_slope) {
            continue;
        }
        ++qualifying;
        if ((slope > 0.0) == (*r.gamma_t < 0.0)) {
            ++agreeing;
        }
    }
    if (qualifying == 0) {
        return std::nullopt;
    }
    return static_cast<double>(agreeing) / static_cast<double>(qualifying);
}

struct RobustnessReport {
    /// Most robust first: later half-life of E_a(t)/E_a(0) wins, ties are
    /// broken by the mean normalized value over the grid.
    std::vector<InitialStateKind> ranking;
    /// First time the normalized curve drops to 1/2 (linear interpolation),
    /// +inf if it never does on the grid.
    std::map<InitialStateKind, double> half_life;
    std::map<InitialStateKind, double> mean_normalized;
    std::map<InitialStateKind, std::vector<double>> normalized;
    bool tied = false;
    /// Cluster's normalized E_a is >= every other state's (within 1e-9)
    /// at every grid point past t = 0.
    bool cluster_dominates = true;
    /// Smallest cluster-minus-other normalized difference past t = 0.
    double worst_margin = 0.0;
    double worst_margin_t = 0.0;
    InitialStateKind worst_competitor = InitialStateKind::Cluster4;
};

inline constexpr double kDominanceTolerance = 1e-9;
inline constexpr double kTieTolerance = 1e-12;

/// Ranks the four 4-atom states by how well their atomic entanglement survives.
inline RobustnessReport robustness_ordering(const ReservoirParams &params, std::span<const double> t_grid) {
    if (t_grid.empty()) {
        throw std::invalid_argument("robustness_ordering: empty time grid");
    }
    const ChiParam c = chi(params);
    RobustnessReport rep;
    for (const auto kind : kFourAtomKinds) {
        const int n = atom_count(kind);
        const Labels atoms = atom_labels(n);
        const double e0 = measure(partial_trace(evolved_state(kind, nu(0.0, params, c)), atoms)).total;
        std::vector<double> curve;
        curve.reserve(t_grid.size());
        double acc = 0.0;
        double half = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            const double e = measure(partial_trace(evolved_state(kind, nu(t_grid[i], params, c)), atoms)).total;
            curve.push_back(e / e0);
            acc += curve.back();
            if (std::isinf(half) && i > 0 && curve[i] <= 0.5) {
                const double prev = curve[i - 1];
                const double frac = prev == curve[i] ? 0.0 : (prev - 0.5) / (prev - curve[i]);
                half = t_grid[i - 1] + frac * (t_grid[i] - t_grid[i - 1]);
            }
        }
        rep.half_life[kind] = half;
        rep.mean_normalized[kind] = acc / static_cast<double>(t_grid.size());
        rep.normalized[kind] = std::move(curve);
    }

    auto more_robust = [&](InitialStateKind a, InitialStateKind b) {
        if (rep.half_life[a] != rep.half_life[b]) {
            return rep.half_life[a] > rep.half_life[b];
        }
        return rep.mean_normalized[a] > rep.mean_normalized[b] + kTieTolerance;
    };
    rep.ranking.assign(kFourAtomKinds.begin(), kFourAtomKinds.end());
    std::stable_sort(rep.ranking.begin(), rep.ranking.end(), more_robust);
    rep.tied = !more_robust(rep.ranking.front(), rep.ranking.back());

    const auto &cluster = rep.normalized[InitialStateKind::Cluster4];
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (t_grid[i] <= 0.0) {
            continue;
        }
        for (const auto kind : kFourAtomKinds) {
            if (kind == InitialStateKind::Cluster4) {
                continue;
            }
            const double margin = cluster[i] - rep.normalized[kind][i];
            if (margin < rep.worst_margin) {
                rep.worst_margin = margin;
                rep.worst_margin_t = t_grid[i];
                rep.worst_competitor = kind;
            }
        }
    }
    if (!std::isfinite(rep.worst_margin)) {
        rep.worst_margin = 0.0;
    }
    rep.cluster_dominates = rep.worst_margin >= -kDominanceTolerance;
    return rep;
}

inline RobustnessReport robustness_ordering(std::string_view preset, std::span<const double> t_grid) {
    return robustness_ordering(preset_params(preset), t_grid);
}

} // namespace nmdecoh
