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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>

#include "nmdecoh/entanglement.hpp"
#include "nmdecoh/sweep.hpp"
#include "oracles.hpp"

using namespace nmdecoh;
using Catch::Approx;

namespace {

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix atoms_of(InitialStateKind k, const AmplitudeState &amp) {
    return partial_trace(evolved_state(k, amp), atom_labels(atom_count(k)));
}

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace

TEST_CASE("enumerate_bipartitions", "[entanglement]") {
    CHECK(enumerate_bipartitions(4, 1).size() == 4);
    CHECK(enumerate_bipartitions(4, 2).size() == 3);
    CHECK(enumerate_bipartitions(6, 3).size() == 10);
    for (int n = 2; n <= 8; ++n) {
        for (int m = 1; m <= n / 2; ++m) {
            const auto cuts = enumerate_bipartitions(n, m);
            const double expected = 2 * m == n ? binomial(n, m) / 2 : binomial(n, m);
            CHECK(static_cast<double>(cuts.size()) == expected);
            // Distinct cuts; at m = n/2 no cut appears with its complement.
            std::set<std::vector<int>> seen;
            for (const auto &c : cuts) {
                CHECK(c.m() == m);
                CHECK(std::is_sorted(c.small_side.begin(), c.small_side.end()));
                std::vector<int> complement;
                for (int q = 0; q < n; ++q) {
                    if (std::find(c.small_side.begin(), c.small_side.end(), q) == c.small_side.end()) {
                        complement.push_back(q);
                    }
                }
                CHECK(seen.insert(c.small_side).second);
                if (2 * m == n) {
                    CHECK_FALSE(seen.contains(complement));
                }
            }
        }
    }
    CHECK(enumerate_bipartitions(4, 2)[0].key() == "01");
    CHECK(enumerate_bipartitions(4, 2)[2].key() == "03");
    CHECK_THROWS_AS(enumerate_bipartitions(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_bipartitions(4, 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_bipartitions(1, 1), std::invalid_argument);
}

TEST_CASE("negativity of small states", "[entanglement]") {
    SECTION("Bell pair") {
        CVector v = CVector::Zero(4);
        v(0) = v(3) = 1.0 / std::sqrt(2.0);
        const DensityMatrix rho(PureState({atom(0), atom(1)}, v));
        CHECK(negativity(rho, {{0}, 2}) == Approx(1.0).epsilon(1e-12));
    }
    SECTION("product state") {
        std::mt19937_64 rng(1);
        const auto u = oracle::random_unitary(rng);
        CVector v = CVector::Zero(16);
        v(0) = 1.0;
        CMatrix local = kron(kron(u, u), kron(u, u));
        const DensityMatrix rho(PureState(atom_labels(4), local * v));
        for (int m = 1; m <= 2; ++m) {
            for (const auto &cut : enumerate_bipartitions(4, m)) {
                CHECK(negativity(rho, cut) == 0.0);
            }
        }
    }
    SECTION("GHZ4 2|2 cut") {
        const DensityMatrix rho(ghz4());
        CHECK(negativity(rho, {{0, 1}, 4}) == Approx(1.0 / 3.0).epsilon(1e-12));
    }
    SECTION("dimension mismatch") {
        const DensityMatrix rho(ghz4());
        CHECK_THROWS_AS(negativity(rho, {{0}, 5}), std::invalid_argument);
        CHECK_THROWS_AS(negativity(rho, {{0, 9}, 4}), std::invalid_argument);
    }
}

TEST_CASE("measure of the pure initial states", "[entanglement]") {
    struct Case {
        InitialStateKind kind;
        double expected;
    };
    for (const auto &[kind, expected] : {Case{InitialStateKind::W4, (6.0 * std::sqrt(3.0) + 4.0) / 24.0},
                                         Case{InitialStateKind::GHZ4, 2.0 / 3.0},
                                         Case{InitialStateKind::Dicke4, 7.0 / 9.0},
                                         Case{InitialStateKind::Cluster4, 8.0 / 9.0}}) {
        const auto psi = initial_state(kind);
        const double schmidt = oracle::schmidt_measure(psi.amplitudes(), 4);
        CHECK(schmidt == Approx(expected).epsilon(1e-12));
        const auto report = measure(DensityMatrix(psi));
        CHECK(std::abs(report.total - expected) < 1e-9);
        CHECK(report.per_size.size() == 2);
        CHECK(report.per_bipartition.size() == 7);
    }
    SECTION("cluster 2|2 cuts") {
        const auto report = measure(DensityMatrix(cluster4()));
        std::vector<double> two;
        for (const auto &[cut, e] : report.per_bipartition) {
            if (cut.m() == 2) {
                two.push_back(e);
            }
        }
        std::sort(two.begin(), two.end());
        CHECK(two[0] == Approx(1.0 / 3.0).epsilon(1e-10));
        CHECK(two[1] == Approx(1.0).epsilon(1e-10));
        CHECK(two[2] == Approx(1.0).epsilon(1e-10));
    }
    SECTION("W5 and W6 from the Schmidt oracle") {
        for (const int n : {5, 6}) {
            const auto psi = w_state(n);
            CHECK(std::abs(measure(DensityMatrix(psi)).total - oracle::schmidt_measure(psi.amplitudes(), n)) < 1e-10);
        }
    }
    SECTION("unsupported party count") {
        CVector v = CVector::Zero(8);
        v(0) = 1.0;
        CHECK_THROWS_AS(measure(DensityMatrix(PureState(atom_labels(3), v))), std::invalid_argument);
    }
}

TEST_CASE("every cut of every pure initial state matches the Schmidt formula", "[entanglement][property]") {
    for (const auto kind : kAllStateKinds) {
        const auto psi = initial_state(kind);
        const int n = atom_count(kind);
        const auto report = measure(DensityMatrix(psi));
        for (const auto &[cut, e] : report.per_bipartition) {
            CHECK(std::abs(e - oracle::schmidt_negativity(psi.amplitudes(), n, cut.small_side)) < 1e-10);
        }
    }
}

TEST_CASE("W4 closed forms", "[entanglement]") {
    const double top = (6.0 * std::sqrt(3.0) + 4.0) / 24.0;
    SECTION("examples") {
        CHECK(w_closed_form_Ea(1.0) == Approx(top).epsilon(1e-14));
        CHECK(w_closed_form_Ea(0.0) == Approx(0.0).margin(1e-15));
        CHECK(w_closed_form_Ea(0.5) == Approx(0.115237).margin(5e-7));
        CHECK(w_closed_form_Er(1.0) == Approx(0.0).margin(1e-15));
        CHECK(w_closed_form_Er(0.0) == Approx(top).epsilon(1e-14));
        CHECK(top == Approx(0.599679).margin(5e-7));
    }
    SECTION("symmetry and sign of the brackets") {
        for (int i = 0; i <= 10000; ++i) {
            const double u = i / 10000.0;
            CHECK(std::abs(w_closed_form_Er(u) - w_closed_form_Ea(1.0 - u)) < 1e-14);
            CHECK(w_bracket_atoms(u) <= 1e-12);
            CHECK(w_bracket_reservoirs(u) <= 1e-12);
        }
    }
    SECTION("E_a is nondecreasing in |nu|^2") {
        double prev = w_closed_form_Ea(0.0);
        for (int i = 1; i <= 10000; ++i) {
            const double cur = w_closed_form_Ea(i / 10000.0);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
    SECTION("out of range") {
        CHECK_THROWS_AS(w_closed_form_Ea(-0.01), std::invalid_argument);
        CHECK_THROWS_AS(w_closed_form_Er(1.01), std::invalid_argument);
        CHECK_NOTHROW(w_closed_form_Ea(1.0 + 1e-13));
    }
}

TEST_CASE("pipeline reproduces the W4 closed forms", "[entanglement][property]") {
    for (int i = 0; i < 50; ++i) {
        const double u = i / 49.0;
        // Phase of nu is irrelevant; use a complex value to exercise it.
        const auto amp = AmplitudeState::from_nu(0.0, std::polar(std::sqrt(u), 0.3 * i));
        const auto [ra, rr] = subsystem_entanglement(InitialStateKind::W4, amp);
        CHECK(std::abs(ra.total - w_closed_form_Ea(u)) < 1e-9);
        CHECK(std::abs(rr.total - w_closed_form_Er(u)) < 1e-9);
    }
}

TEST_CASE("local unitaries leave every cut unchanged", "[entanglement][property]") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (const auto kind : kFourAtomKinds) {
        for (int trial = 0; trial < 3; ++trial) {
            const auto rho = atoms_of(kind, AmplitudeState::from_nu(0.0, std::sqrt(uni(rng))));
            CMatrix local = oracle::random_unitary(rng);
            for (int q = 1; q < 4; ++q) {
                local = kron(local, oracle::random_unitary(rng));
            }
            CMatrix rotated = local * rho.matrix() * local.adjoint();
            rotated = 0.5 * (rotated + rotated.adjoint()).eval();
            const DensityMatrix rho2(rho.labels(), rotated);
            const auto a = measure(rho);
            const auto b = measure(rho2);
            for (std::size_t i = 0; i < a.per_bipartition.size(); ++i) {
                CHECK(std::abs(a.per_bipartition[i].second - b.per_bipartition[i].second) < 1e-9);
            }
        }
    }
}

TEST_CASE("report ranges and averaging", "[entanglement][property]") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (const auto kind : kAllStateKinds) {
        for (int trial = 0; trial < 4; ++trial) {
            const auto [ra, rr] =
                subsystem_entanglement(kind, AmplitudeState::from_nu(0.0, std::sqrt(uni(rng))));
            for (const auto *rep : {&ra, &rr}) {
                for (const auto &[cut, e] : rep->per_bipartition) {
                    CHECK(e >= 0.0);
                    CHECK(e <= 1.0 + 1e-10);
                }
                double acc = 0.0;
                for (const auto &[m, e] : rep->per_size) {
                    CHECK(e >= 0.0);
                    CHECK(e <= 1.0 + 1e-10);
                    double sum = 0.0;
                    int count = 0;
                    for (const auto &[cut, ei] : rep->per_bipartition) {
                        if (cut.m() == m) {
                            sum += ei;
                            ++count;
                        }
                    }
                    CHECK(e == Approx(sum / count).epsilon(1e-14));
                    acc += e;
                }
                CHECK(rep->total == Approx(acc / static_cast<double>(rep->per_size.size())).epsilon(1e-14));
                CHECK(rep->total <= 1.0 + 1e-10);
            }
        }
    }
}

TEST_CASE("atom and reservoir entanglement are dual under |nu|^2 -> 1 - |nu|^2", "[entanglement][property]") {
    for (const auto kind : kAllStateKinds) {
        for (int i = 0; i < 20; ++i) {
            const double u = (i + 0.5) / 20.0;
            const auto [ra, rr] = subsystem_entanglement(kind, AmplitudeState::from_nu(0.0, std::sqrt(u)));
            const auto [ra2, rr2] = subsystem_entanglement(kind, AmplitudeState::from_nu(0.0, std::sqrt(1.0 - u)));
            CHECK(std::abs(rr.total - ra2.total) < 1e-9);
        }
    }
}
