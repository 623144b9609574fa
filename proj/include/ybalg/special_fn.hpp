#pragma once

// Weight functions of the elliptic SOS model and its six-vertex limit.
//
// The elliptic weight is f(lambda) = Theta_1(i lambda, tau) / 2 with nome
// p = exp(i pi tau) and the Fourier series
//
//   Theta_1(z) = 2 SUM_{n>=0} (-1)^n p^{(n+1/2)^2} sin((2n+1) z).
//
// In the trigonometric regime f is sinh and the six-vertex weights are
// a = sinh(lambda + gamma), b = sinh(lambda), c = sinh(gamma).

#include "ybalg/errors.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <variant>

namespace ybalg {

using Complex = std::complex<double>;

struct EllipticParams {
    Complex nome{0.2, 0.0};
    int series_cap = 200;
    double term_tol = 1e-18;

    static constexpr double kMaxNome = 0.9;

    void validate() const {
        if (!(std::abs(nome) < kMaxNome))
            throw NomeTooLarge("elliptic nome |p| = " + std::to_string(std::abs(nome)) + " must be below 0.9");
        if (series_cap < 1) throw InvalidModel("series_cap must be >= 1");
        if (!(term_tol > 0.0)) throw InvalidModel("term_tol must be positive");
    }

    /// tau with p = exp(i pi tau), principal branch of the logarithm.
    Complex tau() const { return std::log(nome) / (Complex{0.0, 1.0} * std::numbers::pi); }
};

struct Trigonometric {};

/// Exactly one of the two weight regimes is active.
using Regime = std::variant<EllipticParams, Trigonometric>;

inline bool is_trigonometric(const Regime& r) { return std::holds_alternative<Trigonometric>(r); }

namespace detail {

// p^{(n+1/2)^2} through tau keeps a single consistent branch for complex nomes.
inline Complex nome_power(const EllipticParams& params, int n) {
    const double e = (n + 0.5) * (n + 0.5);
    if (params.nome.imag() == 0.0 && params.nome.real() > 0.0)
        return Complex{std::pow(params.nome.real(), e), 0.0};
    return std::exp(Complex{0.0, 1.0} * std::numbers::pi * params.tau() * e);
}

// Sums 2 SUM (-1)^n p^{(n+1/2)^2} term(n) until the last term is negligible
// against the accumulated magnitude.
template <class Term>
Complex theta_series(const EllipticParams& params, Term&& term) {
    params.validate();
    Complex sum{0.0, 0.0};
    double accumulated = 0.0;
    for (int n = 0; n < params.series_cap; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const Complex t = sign * nome_power(params, n) * term(n);
        sum += t;
        accumulated += std::abs(t);
        if (std::abs(t) <= params.term_tol * accumulated) return 2.0 * sum;
    }
    throw NonConvergent("theta series did not converge within " + std::to_string(params.series_cap) + " terms");
}

} // namespace detail

/// Jacobi Theta_1(z) for the nome in `params`.
inline Complex theta1(Complex z, const EllipticParams& params) {
    return detail::theta_series(params, [z](int n) { return std::sin(double(2 * n + 1) * z); });
}

/// d/dz Theta_1(z) at z = 0.
inline Complex theta1_deriv0(const EllipticParams& params) {
    return detail::theta_series(params, [](int n) { return Complex{double(2 * n + 1), 0.0}; });
}

inline Complex f_weight(Complex lambda, const Regime& regime) {
    if (is_trigonometric(regime)) return std::sinh(lambda);
    const auto& params = std::get<EllipticParams>(regime);
    return theta1(Complex{0.0, 1.0} * lambda, params) / 2.0;
}

/// f'(0). Elliptic: i/2 * Theta_1'(0); trigonometric: cosh(0) = 1.
inline Complex f_weight_deriv0(const Regime& regime) {
    if (is_trigonometric(regime)) return {1.0, 0.0};
    const auto& params = std::get<EllipticParams>(regime);
    return Complex{0.0, 0.5} * theta1_deriv0(params);
}

struct SixVertexWeights {
    Complex a, b, c;
};

inline SixVertexWeights trig_weights(Complex lambda, Complex gamma) {
    return {std::sinh(lambda + gamma), std::sinh(lambda), std::sinh(gamma)};
}

} // namespace ybalg
