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
 * Multipartite initial states of the atoms and the joint atom+reservoir
 * state at a given amplitude. Kets are written with atom 0 leftmost, which
 * is the most significant bit of the register index.
 */
#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qstate.hpp"

namespace nmdecoh {

enum class InitialStateKind { W4, W5, W6, GHZ4, Dicke4, Cluster4 };

inline constexpr std::array kAllStateKinds{InitialStateKind::W4,   InitialStateKind::W5,     InitialStateKind::W6,
                                           InitialStateKind::GHZ4, InitialStateKind::Dicke4, InitialStateKind::Cluster4};

/// The four 4-atom states compared against each other.
inline constexpr std::array kFourAtomKinds{InitialStateKind::Cluster4, InitialStateKind::Dicke4, InitialStateKind::GHZ4,
                                           InitialStateKind::W4};

inline std::string_view name(InitialStateKind k) {
    switch (k) {
    case InitialStateKind::W4:
        return "w4";
    case InitialStateKind::W5:
        return "w5";
    case InitialStateKind::W6:
        return "w6";
    case InitialStateKind::GHZ4:
        return "ghz4";
    case InitialStateKind::Dicke4:
        return "dicke4";
    case InitialStateKind::Cluster4:
        return "cluster4";
    }
    return "?";
}

inline std::optional<InitialStateKind> parse_state_kind(std::string_view s) {
    for (const auto k : kAllStateKinds) {
        if (name(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

inline int atom_count(InitialStateKind k) {
    switch (k) {
    case InitialStateKind::W5:
        return 5;
    case InitialStateKind::W6:
        return 6;
    default:
        return 4;
    }
}

inline Labels atom_labels(int n) {
    Labels out;
    for (int i = 0; i < n; ++i) {
        out.push_back(atom(i));
    }
    return out;
}

inline Labels reservoir_labels(int n) {
    Labels out;
    for (int i = 0; i < n; ++i) {
        out.push_back(reservoir(i));
    }
    return out;
}

namespace detail {

/// Parses a ket string such as "0011" (leftmost = most significant).
inline Eigen::Index ket_index(std::string_view bits) {
    Eigen::Index idx = 0;
    for (const char c : bits) {
        idx = (idx << 1) | (c == '1' ? 1 : 0);
    }
    return idx;
}

} // namespace detail

/// Equal superposition of the n single-excitation kets, amplitude 1/sqrt(n).
inline PureState w_state(int n) {
    if (n < 4 || n > 6) {
        throw std::invalid_argument("w_state: n must be 4, 5 or 6");
    }
    CVector v = CVector::Zero(Eigen::Index{1} << n);
    for (int k = 0; k < n; ++k) {
        v(Eigen::Index{1} << k) = 1.0 / std::sqrt(static_cast<double>(n));
    }
    return {atom_labels(n), std::move(v)};
}

/// (|0000> + |1111>)/sqrt(2)
inline PureState ghz4() {
    CVector v = CVector::Zero(16);
    v(detail::ket_index("0000")) = v(detail::ket_index("1111")) = 1.0 / std::sqrt(2.0);
    return {atom_labels(4), std::move(v)};
}

/// (|0011> + |0101> + |1001> + |1100> + |0110> + |1010>)/sqrt(6)
inline PureState dicke4() {
    CVector v = CVector::Zero(16);
    for (const auto *ket : {"0011", "0101", "1001", "1100", "0110", "1010"}) {
        v(detail::ket_index(ket)) = 1.0 / std::sqrt(6.0);
    }
    return {atom_labels(4), std::move(v)};
}

/// (|0000> + |0011> + |1100> - |1111>)/2
inline PureState cluster4() {
    CVector v = CVector::Zero(16);
    v(detail::ket_index("0000")) = 0.5;
    v(detail::ket_index("0011")) = 0.5;
    v(detail::ket_index("1100")) = 0.5;
    v(detail::ket_index("1111")) = -0.5;
    return {atom_labels(4), std::move(v)};
}

inline PureState initial_state(InitialStateKind k) {
    switch (k) {
    case InitialStateKind::W4:
        return w_state(4);
    case InitialStateKind::W5:
        return w_state(5);
    case InitialStateKind::W6:
        return w_state(6);
    case InitialStateKind::GHZ4:
        return ghz4();
    case InitialStateKind::Dicke4:
        return dicke4();
    case InitialStateKind::Cluster4:
        return cluster4();
    }
    throw std::invalid_argument("initial_state: unknown kind");
}

/**
 * Atoms prepared in `k`, reservoirs in vacuum, then the pair isometry
 * applied once per (atom_i, reservoir_i) with the same amplitude. Labels
 * are a0..a{N-1} followed by r0..r{N-1}.
 */
inline PureState evolved_state(InitialStateKind k, const AmplitudeState &amp) {
    const int n = atom_count(k);
    PureState state = tensor(initial_state(k), PureState::basis(reservoir_labels(n), 0));
    for (int i = 0; i < n; ++i) {
        state = apply_pair_isometry(state, atom(i), reservoir(i), amp);
    }
    return state;
}

} // namespace nmdecoh
