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
 * Numerical cross-checks between independent routes: closed-form amplitude
 * against ODE integration, analytic derivative against finite differences,
 * closed-form kernel against quadrature of the spectral density, and the
 * negativity pipeline against the W-state closed forms.
 */
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "analysis.hpp"

namespace nmdecoh {

/**
 * Max |nu_closed - nu_oracle| over the uniform grid with n_points on
 * [0, t_max]. The oracle runs on the same grid refined by the smallest
 * integer factor that meets its step bound.
 */
inline double max_oracle_deviation(const ReservoirParams &params, double t_max, int n_points) {
    const double h = t_max / static_cast<double>(n_points - 1);
    const auto refine =
        static_cast<int>(std::ceil(h * oracle_rate_scale(params) / kOracleStepBound * (1.0 - 1e-12)));
    const int sub = std::max(1, refine);
    const int fine_points = (n_points - 1) * sub + 1;
    const auto fine = uniform_grid(t_max, fine_points);
    const auto oracle = volterra_oracle(params, fine);
    const ChiParam c = chi(params);
    double worst = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const auto k = static_cast<std::size_t>(i) * static_cast<std::size_t>(sub);
        worst = std::max(worst, std::abs(nu(fine[k], params, c).nu - oracle[k]));
    }
    return worst;
}

/// Max relative gap between nu_dot and a central difference of nu over a grid.
inline double max_derivative_deviation(const ReservoirParams &params, std::span<const double> times) {
    const double step = 1e-6 / params.gamma0;
    double worst = 0.0;
    for (const double t : times) {
        if (t < step) {
            continue;
        }
        const cplx fd = (nu(t + step, params).nu - nu(t - step, params).nu) / (2.0 * step);
        const cplx an = nu_dot(t, params);
        worst = std::max(worst, std::abs(fd - an) / std::max(std::abs(an), 1e-3 * params.gamma0));
    }
    return worst;
}

/**
 * f(tau) = int J(omega) exp[i (omega_a - omega) tau] d omega by Gauss-Legendre
 * quadrature over half-period panels centred on the Lorentzian peak. The
 * oscillating partial sums are accelerated by repeated averaging.
 */
inline cplx kernel_by_quadrature(double tau, ReservoirParams params) {
    if (!params.omega_a) {
        params.omega_a = 0.0;
    }
    static constexpr std::array<double, 8> nodes{0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                                 0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                                 0.9445750230732326, 0.9894009349916499};
    static constexpr std::array<double, 8> weights{0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                                   0.1495959368207881, 0.1246289712165786, 0.0951585116824928,
                                                   0.0622535239386479, 0.0271524594117541};
    const double centre = *params.omega_a - params.delta;
    auto integrand = [&](double w) {
        return spectral_density(w, params) * std::exp(cplx{0.0, (*params.omega_a - w) * tau});
    };
    auto panel = [&](double a, double b) {
        const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / (0.25 * params.lambda))));
        const double width = (b - a) / pieces;
        cplx acc{};
        for (int p = 0; p < pieces; ++p) {
            const double mid = a + (p + 0.5) * width;
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                const double dx = 0.5 * width * nodes[k];
                acc += weights[k] * (integrand(mid - dx) + integrand(mid + dx));
            }
        }
        return 0.5 * width * acc;
    };
    if (tau == 0.0) {
        // omega = centre + lambda tan(theta) maps the real line onto (-pi/2, pi/2).
        cplx acc{};
        const int pieces = 64;
        const double width = std::numbers::pi / pieces;
        for (int p = 0; p < pieces; ++p) {
            const double mid = -0.5 * std::numbers::pi + (p + 0.5) * width;
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                for (const double th : {mid - 0.5 * width * nodes[k], mid + 0.5 * width * nodes[k]}) {
                    const double c = std::cos(th);
                    acc += weights[k] * integrand(centre + params.lambda * std::tan(th)) * params.lambda / (c * c);
                }
            }
        }
        return 0.5 * width * acc;
    }
    const double half_period = std::numbers::pi / tau;
    constexpr int kPanels = 4000;
    constexpr int kLevels = 12;
    std::vector<cplx> partial;
    cplx sum = panel(centre - half_period, centre + half_period);
    for (int k = 1; k <= kPanels; ++k) {
        sum += panel(centre + k * half_period, centre + (k + 1) * half_period);
        sum += panel(centre - (k + 1) * half_period, centre - k * half_period);
        if (k > kPanels - kLevels - 1) {
            partial.push_back(sum);
        }
    }
    while (partial.size() > 1) {
        for (std::size_t i = 0; i + 1 < partial.size(); ++i) {
            partial[i] = 0.5 * (partial[i] + partial[i + 1]);
        }
        partial.pop_back();
    }
    return partial.front();
}

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    [[nodiscard]] bool passed() const { return value < tolerance; }
};

/// Reference values of the averaged negativity of the pure initial states,
/// obtained from their Schmidt spectra.
inline double initial_measure_reference(InitialStateKind k) {
    switch (k) {
    case InitialStateKind::W4:
        return (6.0 * std::sqrt(3.0) + 4.0) / 24.0;
    case InitialStateKind::GHZ4:
        return 2.0 / 3.0;
    case InitialStateKind::Dicke4:
        return 7.0 / 9.0;
    case InitialStateKind::Cluster4:
        return 8.0 / 9.0;
    default:
        throw std::invalid_argument("initial_measure_reference: no reference for this state");
    }
}

/// The oracle suite behind `nmdecoh verify`.
inline std::vector<CheckResult> run_verification() {
    std::vector<CheckResult> out;

    for (const auto name : {"fig1", "fig2", "fig3", "fig4", "fig5"}) {
        const Preset &p = find_preset(name);
        out.push_back({std::string("amplitude closed form vs ODE oracle, ") + name,
                       max_oracle_deviation(preset_params(name), p.t_max, kDefaultPoints), 1e-6});
    }

    for (const auto name : {"fig1", "fig2", "fig5"}) {
        const Preset &p = find_preset(name);
        const auto grid = uniform_grid(p.t_max, 101);
        out.push_back({std::string("nu_dot vs central difference (relative), ") + name,
                       max_derivative_deviation(preset_params(name), grid), 1e-6});
    }

    {
        const ReservoirParams kp{1.0, 1.0, 0.7, 3.0};
        double worst = 0.0;
        for (const double tau : {0.0, 0.5, 2.0}) {
            worst = std::max(worst, std::abs(kernel_by_quadrature(tau, kp) - kernel(tau, kp)));
        }
        out.push_back({"memory kernel closed form vs quadrature", worst, 1e-7});
    }

    {
        double worst_a = 0.0;
        double worst_r = 0.0;
        for (int i = 0; i < 50; ++i) {
            const double u = static_cast<double>(i) / 49.0;
            const auto amp = AmplitudeState::from_nu(0.0, std::sqrt(u));
            const auto [ra, rr] = subsystem_entanglement(InitialStateKind::W4, amp);
            worst_a = std::max(worst_a, std::abs(ra.total - w_closed_form_Ea(u)));
            worst_r = std::max(worst_r, std::abs(rr.total - w_closed_form_Er(u)));
        }
        out.push_back({"W4 atom entanglement vs closed form", worst_a, 1e-9});
        out.push_back({"W4 reservoir entanglement vs closed form", worst_r, 1e-9});
    }

    for (const auto kind : kFourAtomKinds) {
        const auto [ra, rr] = subsystem_entanglement(kind, AmplitudeState{});
        out.push_back({std::string("initial entanglement of ") + std::string(name(kind)),
                       std::abs(ra.total - initial_measure_reference(kind)), 1e-9});
    }
    return out;
}

} // namespace nmdecoh
