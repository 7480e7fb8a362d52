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
 * Bipartition-averaged normalized negativity.
 *
 * For an N-party state, E(i) = 2/(2^m - 1) * sum |negative eigenvalues of
 * rho^{T_S}| for each cut S | rest with |S| = m, E^(m) averages E(i) over
 * the nonequivalent m-cuts and E averages E^(m) over m = 1..floor(N/2).
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qstate.hpp"

namespace nmdecoh {

inline constexpr double kNegativeEigenvalueThreshold = 1e-12;

/// A cut between the parties in `small_side` and the rest. Party indices
/// are positions in the density matrix's label list.
struct Bipartition {
    std::vector<int> small_side;  ///< sorted ascending
    int n_parties = 0;

    [[nodiscard]] int m() const { return static_cast<int>(small_side.size()); }

    /// Concatenated sorted indices, e.g. "02".
    [[nodiscard]] std::string key() const {
        std::string s;
        for (const int i : small_side) {
            s += std::to_string(i);
        }
        return s;
    }

    auto operator<=>(const Bipartition &) const = default;
};

/**
 * All m-subsets of {0..n-1} in lexicographic order. When 2m == n a cut and
 * its complement coincide, so only subsets containing party 0 are kept.
 */
inline std::vector<Bipartition> enumerate_bipartitions(int n, int m) {
    if (n < 2 || m < 1 || m > n / 2) {
        throw std::invalid_argument("enumerate_bipartitions: need 1 <= m <= floor(n/2)");
    }
    std::vector<Bipartition> out;
    std::vector<int> idx(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        idx[static_cast<std::size_t>(i)] = i;
    }
    while (true) {
        if (2 * m != n || idx.front() == 0) {
            out.push_back({idx, n});
        }
        int k = m - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - m + k) {
            --k;
        }
        if (k < 0) {
            break;
        }
        ++idx[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < m; ++j) {
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

inline double negativity(const DensityMatrix &rho, const Bipartition &part) {
    if (static_cast<int>(rho.num_qubits()) != part.n_parties) {
        throw std::invalid_argument("negativity: density matrix has " + std::to_string(rho.num_qubits()) +
                                    " parties, bipartition expects " + std::to_string(part.n_parties));
    }
    if (part.m() < 1 || part.m() >= part.n_parties) {
        throw std::invalid_argument("negativity: invalid bipartition");
    }
    Labels subset;
    for (const int i : part.small_side) {
        if (i < 0 || i >= part.n_parties) {
            throw std::invalid_argument("negativity: party index out of range");
        }
        subset.push_back(rho.labels()[static_cast<std::size_t>(i)]);
    }
    const LabeledOperator pt = partial_transpose(rho, subset);
    double sum = 0.0;
    for (const double ev : detail::hermitian_eigenvalues(pt.matrix)) {
        if (ev < -kNegativeEigenvalueThreshold) {
            sum -= ev;
        }
    }
    return 2.0 / (std::ldexp(1.0, part.m()) - 1.0) * sum;
}

struct EntanglementReport {
    std::vector<std::pair<Bipartition, double>> per_bipartition;  ///< ordered by m, then lexicographically
    std::map<int, double> per_size;                               ///< m -> E^(m)
    double total = 0.0;
};

inline EntanglementReport measure(const DensityMatrix &rho) {
    const int n = static_cast<int>(rho.num_qubits());
    if (n < 4 || n > 6) {
        throw std::invalid_argument("measure: supported party counts are 4, 5 and 6");
    }
    EntanglementReport report;
    for (int m = 1; m <= n / 2; ++m) {
        double acc = 0.0;
        const auto cuts = enumerate_bipartitions(n, m);
        for (const auto &cut : cuts) {
            const double e = negativity(rho, cut);
            acc += e;
            report.per_bipartition.emplace_back(cut, e);
        }
        report.per_size[m] = acc / static_cast<double>(cuts.size());
    }
    double acc = 0.0;
    for (const auto &[m, e] : report.per_size) {
        acc += e;
    }
    report.total = acc / static_cast<double>(report.per_size.size());
    return report;
}

namespace detail {

inline void require_population(double u, const char *what) {
    if (!(u >= -1e-12 && u <= 1.0 + 1e-12)) {
        throw std::invalid_argument(std::string(what) + ": |nu|^2 must lie in [0, 1]");
    }
}

} // namespace detail

/// Signed bracket of the 4-atom W closed form for the atoms; <= 0 on [0, 1].
inline double w_bracket_atoms(double u) {
    return 16.0 - 16.0 * u - (6.0 * std::sqrt(7.0 * u * u - 8.0 * u + 4.0) + 4.0 * std::sqrt(2.0 * u * u - 2.0 * u + 1.0));
}

/// Signed bracket of the 4-atom W closed form for the reservoirs; <= 0 on [0, 1].
inline double w_bracket_reservoirs(double u) {
    return 16.0 * u - (6.0 * std::sqrt(7.0 * u * u - 6.0 * u + 3.0) + 4.0 * std::sqrt(2.0 * u * u - 2.0 * u + 1.0));
}

/// Closed-form E_a of the 4-atom W state as a function of u = |nu|^2.
inline double w_closed_form_Ea(double u) {
    detail::require_population(u, "w_closed_form_Ea");
    return std::abs(w_bracket_atoms(u)) / 24.0;
}

/// Closed-form E_r of the 4-atom W state as a function of u = |nu|^2.
inline double w_closed_form_Er(double u) {
    detail::require_population(u, "w_closed_form_Er");
    return std::abs(w_bracket_reservoirs(u)) / 24.0;
}

} // namespace nmdecoh
