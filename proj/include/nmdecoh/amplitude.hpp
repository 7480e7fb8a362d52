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
 * Excited-state amplitude of a two-level atom coupled to a detuned
 * Lorentzian reservoir: closed-form solution, derivative, decay rate,
 * memory kernel, spectral density and an independent ODE oracle.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nmdecoh {

using cplx = std::complex<double>;

/**
 * Physical constants of one atom-reservoir pair. All rates are in the
 * same (arbitrary) inverse-time unit; the CLI works with gamma0 = 1.
 */
struct ReservoirParams {
    double gamma0 = 1.0;  ///< coupling strength, 1/tau_R
    double lambda = 1.0;  ///< spectral width, 1/tau_B
    double delta = 0.0;   ///< detuning of the spectral peak from omega_a
    std::optional<double> omega_a{};  ///< only needed by spectral_density()

    [[nodiscard]] double correlation_time() const { return 1.0 / lambda; }
    [[nodiscard]] double relaxation_time() const { return 1.0 / gamma0; }

    /// Throws std::invalid_argument unless gamma0 >= 0, lambda > 0 and all
    /// fields are finite. gamma0 == 0 is the uncoupled limit.
    void validate() const {
        if (!std::isfinite(gamma0) || !std::isfinite(lambda) || !std::isfinite(delta) ||
            (omega_a && !std::isfinite(*omega_a))) {
            throw std::invalid_argument("ReservoirParams: non-finite value");
        }
        if (gamma0 < 0.0) {
            throw std::invalid_argument("ReservoirParams: gamma0 must be >= 0");
        }
        if (lambda <= 0.0) {
            throw std::invalid_argument("ReservoirParams: lambda must be > 0");
        }
    }
};

/// chi = sqrt((lambda - i delta)^2 - 2 gamma0 lambda), principal branch.
struct ChiParam {
    cplx chi{};
    bool degenerate = false;  ///< |chi| < 1e-9 lambda; removable singularity
};

/// (nu, mu) at time t with |nu|^2 + mu^2 = 1.
struct AmplitudeState {
    double t = 0.0;
    cplx nu{1.0, 0.0};
    double mu = 0.0;

    /// Fills mu = sqrt(1 - |nu|^2). Round-off overshoot up to 1e-12 is
    /// clamped; anything larger is unphysical and throws std::domain_error.
    static AmplitudeState from_nu(double t, cplx nu) {
        const double p = std::norm(nu);
        if (!(p <= 1.0 + 1e-12)) {
            throw std::domain_error("AmplitudeState: |nu|^2 exceeds 1");
        }
        return {t, nu, std::sqrt(std::max(0.0, 1.0 - p))};
    }

    [[nodiscard]] double population() const { return std::norm(nu); }
};

inline constexpr double kDegenerateChiRatio = 1e-9;
inline constexpr double kUndefinedRateThreshold = 1e-10;
inline constexpr double kOracleStepBound = 0.01;

namespace detail {

inline void require_nonnegative_time(double t, const char *what) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument(std::string(what) + ": time must be >= 0");
    }
}

/// sinh(z)/z, accurate near z = 0.
inline cplx sinhc(cplx z) {
    if (std::abs(z) < 1e-4) {
        const cplx z2 = z * z;
        return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sinh(z) / z;
}

inline cplx decay_pole(const ReservoirParams &p) { return {p.lambda, -p.delta}; }

} // namespace detail

inline ChiParam chi(const ReservoirParams &params) {
    params.validate();
    const cplx a = detail::decay_pole(params);
    const cplx radicand = a * a - 2.0 * params.gamma0 * params.lambda;
    // +0.0 folds a signed-zero imaginary part onto the upper side of the cut.
    const cplx c = std::sqrt(cplx{radicand.real(), radicand.imag() + 0.0});
    return {c, std::abs(c) < kDegenerateChiRatio * params.lambda};
}

/**
 * nu(t) = e^{-(lambda - i delta) t/2} [cosh(chi t/2) + (lambda - i delta)/chi sinh(chi t/2)]
 *
 * The supplied chi may be either square root; the result is even in chi.
 * For |chi t/2| >= 1 the bracket is expanded into two exponentials so that
 * large t never overflows cosh/sinh.
 */
inline AmplitudeState nu(double t, const ReservoirParams &params, const ChiParam &c) {
    detail::require_nonnegative_time(t, "nu");
    const cplx a = detail::decay_pole(params);
    const cplx half_at = 0.5 * a * t;
    if (c.degenerate) {
        return AmplitudeState::from_nu(t, std::exp(-half_at) * (1.0 + half_at));
    }
    const cplx z = 0.5 * c.chi * t;
    cplx value;
    if (std::abs(z) < 1.0) {
        value = std::exp(-half_at) * (std::cosh(z) + half_at * detail::sinhc(z));
    } else {
        const cplx ratio = a / c.chi;
        value = 0.5 * (1.0 + ratio) * std::exp(z - half_at) +
                0.5 * (1.0 - ratio) * std::exp(-z - half_at);
    }
    return AmplitudeState::from_nu(t, value);
}

inline AmplitudeState nu(double t, const ReservoirParams &params) {
    return nu(t, params, chi(params));
}

/// d nu/dt = -(gamma0 lambda / chi) e^{-(lambda - i delta) t/2} sinh(chi t/2).
inline cplx nu_dot(double t, const ReservoirParams &params, const ChiParam &c) {
    detail::require_nonnegative_time(t, "nu_dot");
    const cplx a = detail::decay_pole(params);
    const cplx half_at = 0.5 * a * t;
    const double coupling = params.gamma0 * params.lambda;
    if (c.degenerate) {
        return -coupling * 0.5 * t * std::exp(-half_at);
    }
    const cplx z = 0.5 * c.chi * t;
    if (std::abs(z) < 1.0) {
        return -coupling * 0.5 * t * std::exp(-half_at) * detail::sinhc(z);
    }
    return -(coupling / c.chi) * 0.5 * (std::exp(z - half_at) - std::exp(-z - half_at));
}

inline cplx nu_dot(double t, const ReservoirParams &params) {
    return nu_dot(t, params, chi(params));
}

/**
 * Time-local decay rate gamma(t) = -2 Re(nu_dot / nu).
 *
 * Returns std::nullopt where |nu|^2 < 1e-10: the rate diverges at zeros
 * of nu and callers treat those points as missing.
 */
inline std::optional<double> decay_rate(double t, const ReservoirParams &params) {
    const ChiParam c = chi(params);
    const AmplitudeState s = nu(t, params, c);
    if (s.population() < kUndefinedRateThreshold) {
        return std::nullopt;
    }
    return -2.0 * std::real(nu_dot(t, params, c) / s.nu);
}

/// Long-time envelope rate lambda - |Re chi|.
inline double decay_exponent(const ReservoirParams &params) {
    return params.lambda - std::abs(std::real(chi(params).chi));
}

/// Memory kernel f(tau) = (gamma0 lambda / 2) exp[(i delta - lambda) tau].
inline cplx kernel(double tau, const ReservoirParams &params) {
    params.validate();
    detail::require_nonnegative_time(tau, "kernel");
    return 0.5 * params.gamma0 * params.lambda * std::exp(cplx{-params.lambda, params.delta} * tau);
}

/// Lorentzian J(omega) = gamma0 lambda^2 / (2 pi [(omega_a - delta - omega)^2 + lambda^2]).
inline double spectral_density(double omega, const ReservoirParams &params) {
    params.validate();
    if (!params.omega_a) {
        throw std::invalid_argument("spectral_density: omega_a is required");
    }
    if (!std::isfinite(omega)) {
        throw std::invalid_argument("spectral_density: omega must be finite");
    }
    const double offset = *params.omega_a - params.delta - omega;
    return params.gamma0 * params.lambda * params.lambda /
           (2.0 * std::numbers::pi * (offset * offset + params.lambda * params.lambda));
}

/// Largest rate the oracle step has to resolve.
inline double oracle_rate_scale(const ReservoirParams &params) {
    return std::max({params.lambda, std::abs(params.delta), params.gamma0,
                     std::abs(std::imag(chi(params).chi))});
}

/**
 * Integrates the memory-kernel equation nu' = -int_0^t f(t - s) nu(s) ds
 * through its exact local reduction for the exponential kernel:
 *
 *     nu' = -z,   z' = (gamma0 lambda / 2) nu + (i delta - lambda) z,
 *     nu(0) = 1,  z(0) = 0,
 *
 * with classical fixed-step RK4. The grid must start at 0, be uniformly
 * spaced and satisfy h * oracle_rate_scale(params) <= 0.01.
 */
inline std::vector<cplx> volterra_oracle(const ReservoirParams &params, std::span<const double> t_grid) {
    params.validate();
    if (t_grid.empty()) {
        return {};
    }
    if (t_grid.front() != 0.0) {
        throw std::invalid_argument("volterra_oracle: grid must start at t = 0");
    }
    std::vector<cplx> out;
    out.reserve(t_grid.size());
    out.emplace_back(1.0, 0.0);
    if (t_grid.size() == 1) {
        return out;
    }
    const double h = t_grid[1] - t_grid[0];
    if (!(h > 0.0)) {
        throw std::invalid_argument("volterra_oracle: grid must be ascending");
    }
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double step = t_grid[i] - t_grid[i - 1];
        if (std::abs(step - h) > 1e-9 * std::max(1.0, std::abs(t_grid[i]))) {
            throw std::invalid_argument("volterra_oracle: grid must be uniform");
        }
    }
    if (h * oracle_rate_scale(params) > kOracleStepBound * (1.0 + 1e-12)) {
        throw std::invalid_argument("volterra_oracle: grid too coarse for the stability bound");
    }

    const double feed = 0.5 * params.gamma0 * params.lambda;
    const cplx damp{-params.lambda, params.delta};
    auto rhs = [&](cplx n, cplx z) { return std::pair<cplx, cplx>{-z, feed * n + damp * z}; };

    cplx n{1.0, 0.0};
    cplx z{0.0, 0.0};
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const auto [k1n, k1z] = rhs(n, z);
        const auto [k2n, k2z] = rhs(n + 0.5 * h * k1n, z + 0.5 * h * k1z);
        const auto [k3n, k3z] = rhs(n + 0.5 * h * k2n, z + 0.5 * h * k2z);
        const auto [k4n, k4z] = rhs(n + h * k3n, z + h * k3z);
        n += h / 6.0 * (k1n + 2.0 * k2n + 2.0 * k3n + k4n);
        z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        out.push_back(n);
    }
    return out;
}

} // namespace nmdecoh
