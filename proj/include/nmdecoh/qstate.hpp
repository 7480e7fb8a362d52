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
 * Labeled dense multi-qubit states.
 *
 * Bit convention (used everywhere in the library): a register with labels
 * (l_0, ..., l_{n-1}) stores basis state |b_0 b_1 ... b_{n-1}> at index
 * sum_k b_k 2^{n-1-k}, i.e. the first label is the most significant bit.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "amplitude.hpp"

namespace nmdecoh {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class Role : std::uint8_t { Atom, Reservoir };

struct QubitLabel {
    Role role = Role::Atom;
    int index = 0;

    auto operator<=>(const QubitLabel &) const = default;
};

inline QubitLabel atom(int i) { return {Role::Atom, i}; }
inline QubitLabel reservoir(int i) { return {Role::Reservoir, i}; }

inline std::string to_string(const QubitLabel &l) {
    return (l.role == Role::Atom ? "a" : "r") + std::to_string(l.index);
}

using Labels = std::vector<QubitLabel>;

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kIsometryInputTolerance = 1e-12;

namespace detail {

inline constexpr int kMaxQubits = 16;

inline void require_unique(const Labels &labels, const char *what) {
    Labels sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument(std::string(what) + ": duplicate qubit label");
    }
    for (const auto &l : labels) {
        if (l.index < 0) {
            throw std::invalid_argument(std::string(what) + ": negative qubit index");
        }
    }
}

/// Bit shift of the qubit at `position` in an n-qubit register.
inline int shift_of(std::size_t position, std::size_t n) {
    return static_cast<int>(n - 1 - position);
}

inline std::size_t position_of(const Labels &labels, const QubitLabel &l, const char *what) {
    const auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) {
        throw std::invalid_argument(std::string(what) + ": label " + to_string(l) + " not in register");
    }
    return static_cast<std::size_t>(it - labels.begin());
}

/// Positions (ascending) of `subset` inside `labels`; validates membership and uniqueness.
inline std::vector<std::size_t> positions_of(const Labels &labels, std::span<const QubitLabel> subset,
                                             const char *what) {
    std::vector<std::size_t> pos;
    pos.reserve(subset.size());
    for (const auto &l : subset) {
        pos.push_back(position_of(labels, l, what));
    }
    std::sort(pos.begin(), pos.end());
    if (std::adjacent_find(pos.begin(), pos.end()) != pos.end()) {
        throw std::invalid_argument(std::string(what) + ": repeated label in subset");
    }
    return pos;
}

/// Gathers the bits at `positions` (in order) of an n-bit index into a compact index.
inline std::size_t gather_bits(std::size_t index, const std::vector<std::size_t> &positions, std::size_t n) {
    std::size_t out = 0;
    for (const auto p : positions) {
        out = (out << 1) | ((index >> shift_of(p, n)) & 1U);
    }
    return out;
}

/**
 * Eigenvalues of a Hermitian matrix, computed block by block over the
 * connected components of its nonzero pattern. Exact zeros only; a dense
 * matrix falls through to a single eigensolve.
 */
inline std::vector<double> hermitian_eigenvalues(const CMatrix &h) {
    const Eigen::Index n = h.rows();
    std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        parent[static_cast<std::size_t>(i)] = i;
    }
    auto find = [&](Eigen::Index i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
            i = parent[static_cast<std::size_t>(i)];
        }
        return i;
    };
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j + 1; i < n; ++i) {
            if (h(i, j) != cplx{0.0, 0.0}) {
                parent[static_cast<std::size_t>(find(i))] = find(j);
            }
        }
    }
    std::map<Eigen::Index, std::vector<Eigen::Index>> blocks;
    for (Eigen::Index i = 0; i < n; ++i) {
        blocks[find(i)].push_back(i);
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (const auto &[root, idx] : blocks) {
        const auto k = static_cast<Eigen::Index>(idx.size());
        if (k == 1) {
            out.push_back(h(idx[0], idx[0]).real());
            continue;
        }
        CMatrix block(k, k);
        for (Eigen::Index a = 0; a < k; ++a) {
            for (Eigen::Index b = 0; b < k; ++b) {
                block(a, b) = h(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
            }
        }
        const Eigen::SelfAdjointEigenSolver<CMatrix> eig(block, Eigen::EigenvaluesOnly);
        for (const double ev : eig.eigenvalues()) {
            out.push_back(ev);
        }
    }
    return out;
}

} // namespace detail

/// Normalized state vector over a labeled qubit register.
class PureState {
  public:
    PureState(Labels labels, CVector amplitudes) : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)) {
        detail::require_unique(labels_, "PureState");
        if (labels_.empty() || labels_.size() > detail::kMaxQubits) {
            throw std::invalid_argument("PureState: unsupported register size");
        }
        if (amplitudes_.size() != (Eigen::Index{1} << labels_.size())) {
            throw std::invalid_argument("PureState: amplitude count must be 2^(number of labels)");
        }
        if (std::abs(amplitudes_.squaredNorm() - 1.0) > kStateTolerance) {
            throw std::invalid_argument("PureState: state is not normalized");
        }
    }

    /// Computational basis state |index>.
    static PureState basis(Labels labels, std::size_t index) {
        CVector v = CVector::Zero(Eigen::Index{1} << labels.size());
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return {std::move(labels), std::move(v)};
    }

    [[nodiscard]] const Labels &labels() const { return labels_; }
    [[nodiscard]] const CVector &amplitudes() const { return amplitudes_; }
    [[nodiscard]] std::size_t num_qubits() const { return labels_.size(); }
    [[nodiscard]] std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
    [[nodiscard]] cplx operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }

  private:
    Labels labels_;
    CVector amplitudes_;
};

/// Square operator over a labeled register, no physicality requirements.
struct LabeledOperator {
    Labels labels;
    CMatrix matrix;
};

/// Hermitian, unit-trace, positive semidefinite operator over a labeled register.
class DensityMatrix {
  public:
    DensityMatrix(Labels labels, CMatrix matrix) : labels_(std::move(labels)), matrix_(std::move(matrix)) {
        detail::require_unique(labels_, "DensityMatrix");
        const Eigen::Index dim = Eigen::Index{1} << labels_.size();
        if (labels_.empty() || matrix_.rows() != dim || matrix_.cols() != dim) {
            throw std::invalid_argument("DensityMatrix: dimension must be 2^(number of labels)");
        }
        if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
            throw std::invalid_argument("DensityMatrix: not Hermitian");
        }
        if (std::abs(matrix_.trace() - cplx{1.0, 0.0}) > kStateTolerance) {
            throw std::invalid_argument("DensityMatrix: trace differs from 1");
        }
        const auto ev = detail::hermitian_eigenvalues(matrix_);
        if (*std::min_element(ev.begin(), ev.end()) < -kStateTolerance) {
            throw std::invalid_argument("DensityMatrix: not positive semidefinite");
        }
    }

    /// |psi><psi|
    explicit DensityMatrix(const PureState &psi)
        : DensityMatrix(psi.labels(), psi.amplitudes() * psi.amplitudes().adjoint()) {}

    [[nodiscard]] const Labels &labels() const { return labels_; }
    [[nodiscard]] const CMatrix &matrix() const { return matrix_; }
    [[nodiscard]] std::size_t num_qubits() const { return labels_.size(); }
    [[nodiscard]] double purity() const { return std::real((matrix_ * matrix_).trace()); }

  private:
    Labels labels_;
    CMatrix matrix_;
};

/// Kronecker product; the result's labels are a's followed by b's.
inline PureState tensor(const PureState &a, const PureState &b) {
    Labels labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    for (const auto &l : b.labels()) {
        if (std::find(a.labels().begin(), a.labels().end(), l) != a.labels().end()) {
            throw std::invalid_argument("tensor: overlapping label " + to_string(l));
        }
    }
    const auto &va = a.amplitudes();
    const auto &vb = b.amplitudes();
    CVector out(va.size() * vb.size());
    for (Eigen::Index i = 0; i < va.size(); ++i) {
        out.segment(i * vb.size(), vb.size()) = va(i) * vb;
    }
    return {std::move(labels), std::move(out)};
}

/**
 * Single-excitation exchange between an atom and its reservoir mode:
 *
 *     |0>_a|0>_r -> |0>_a|0>_r
 *     |1>_a|0>_r -> nu |1>_a|0>_r + mu |0>_a|1>_r
 *
 * The reservoir qubit must be in vacuum on input; any amplitude above
 * 1e-12 on a |.>_a|1>_r component throws std::invalid_argument.
 */
inline PureState apply_pair_isometry(const PureState &state, const QubitLabel &atom_label,
                                     const QubitLabel &reservoir_label, const AmplitudeState &amp) {
    const auto &labels = state.labels();
    const std::size_t n = labels.size();
    const std::size_t pa = detail::position_of(labels, atom_label, "apply_pair_isometry");
    const std::size_t pr = detail::position_of(labels, reservoir_label, "apply_pair_isometry");
    if (pa == pr) {
        throw std::invalid_argument("apply_pair_isometry: atom and reservoir labels coincide");
    }
    const std::size_t abit = std::size_t{1} << detail::shift_of(pa, n);
    const std::size_t rbit = std::size_t{1} << detail::shift_of(pr, n);

    const CVector &in = state.amplitudes();
    CVector out = CVector::Zero(in.size());
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        const cplx c = in(static_cast<Eigen::Index>(i));
        if ((i & rbit) != 0) {
            if (std::abs(c) > kIsometryInputTolerance) {
                throw std::invalid_argument("apply_pair_isometry: reservoir " + to_string(reservoir_label) +
                                            " is not in vacuum");
            }
            continue;
        }
        if ((i & abit) == 0) {
            out(static_cast<Eigen::Index>(i)) += c;
        } else {
            out(static_cast<Eigen::Index>(i)) += amp.nu * c;
            out(static_cast<Eigen::Index>((i & ~abit) | rbit)) += amp.mu * c;
        }
    }
    return {labels, std::move(out)};
}

/// Reduced state of a pure state on `keep`, labels in register order.
inline DensityMatrix partial_trace(const PureState &state, std::span<const QubitLabel> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set is empty");
    }
    const auto &labels = state.labels();
    const std::size_t n = labels.size();
    const auto kept = detail::positions_of(labels, keep, "partial_trace");
    std::vector<std::size_t> traced;
    for (std::size_t p = 0; p < n; ++p) {
        if (!std::binary_search(kept.begin(), kept.end(), p)) {
            traced.push_back(p);
        }
    }
    const Eigen::Index dk = Eigen::Index{1} << kept.size();
    const Eigen::Index dt = Eigen::Index{1} << traced.size();
    // Amplitudes reshaped as (kept index) x (traced index); rho = M M^dagger.
    CMatrix m = CMatrix::Zero(dk, dt);
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        m(static_cast<Eigen::Index>(detail::gather_bits(i, kept, n)),
          static_cast<Eigen::Index>(detail::gather_bits(i, traced, n))) = state[i];
    }
    Labels out_labels;
    for (const auto p : kept) {
        out_labels.push_back(labels[p]);
    }
    CMatrix rho = m * m.adjoint();
    return {std::move(out_labels), std::move(rho)};
}

inline DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const QubitLabel> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set is empty");
    }
    const auto &labels = rho.labels();
    const std::size_t n = labels.size();
    const auto kept = detail::positions_of(labels, keep, "partial_trace");
    std::vector<std::size_t> traced;
    for (std::size_t p = 0; p < n; ++p) {
        if (!std::binary_search(kept.begin(), kept.end(), p)) {
            traced.push_back(p);
        }
    }
    const std::size_t dim = std::size_t{1} << n;
    const Eigen::Index dk = Eigen::Index{1} << kept.size();
    CMatrix out = CMatrix::Zero(dk, dk);
    for (std::size_t i = 0; i < dim; ++i) {
        const auto ti = detail::gather_bits(i, traced, n);
        const auto ki = static_cast<Eigen::Index>(detail::gather_bits(i, kept, n));
        for (std::size_t j = 0; j < dim; ++j) {
            if (detail::gather_bits(j, traced, n) == ti) {
                out(ki, static_cast<Eigen::Index>(detail::gather_bits(j, kept, n))) +=
                    rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
    }
    Labels out_labels;
    for (const auto p : kept) {
        out_labels.push_back(labels[p]);
    }
    return {std::move(out_labels), std::move(out)};
}

namespace detail {

inline LabeledOperator transpose_factors(const Labels &labels, const CMatrix &m, std::span<const QubitLabel> subset) {
    const std::size_t n = labels.size();
    if (subset.empty() || subset.size() >= n) {
        throw std::invalid_argument("partial_transpose: subset must be a proper nonempty subset");
    }
    const auto pos = positions_of(labels, subset, "partial_transpose");
    std::size_t mask = 0;
    for (const auto p : pos) {
        mask |= std::size_t{1} << shift_of(p, n);
    }
    const std::size_t dim = std::size_t{1} << n;
    CMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const std::size_t si = (i & ~mask) | (j & mask);
            const std::size_t sj = (j & ~mask) | (i & mask);
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                m(static_cast<Eigen::Index>(si), static_cast<Eigen::Index>(sj));
        }
    }
    return {labels, std::move(out)};
}

} // namespace detail

/**
 * Transposes the tensor factors belonging to `subset`:
 * <i_S i_R| rho^{T_S} |j_S j_R> = <j_S i_R| rho |i_S j_R>.
 * The result is Hermitian with unit trace but may have negative eigenvalues.
 */
inline LabeledOperator partial_transpose(const DensityMatrix &rho, std::span<const QubitLabel> subset) {
    return detail::transpose_factors(rho.labels(), rho.matrix(), subset);
}

inline LabeledOperator partial_transpose(const LabeledOperator &op, std::span<const QubitLabel> subset) {
    detail::require_unique(op.labels, "partial_transpose");
    const Eigen::Index dim = Eigen::Index{1} << op.labels.size();
    if (op.matrix.rows() != dim || op.matrix.cols() != dim) {
        throw std::invalid_argument("partial_transpose: dimension must be 2^(number of labels)");
    }
    return detail::transpose_factors(op.labels, op.matrix, subset);
}

} // namespace nmdecoh
