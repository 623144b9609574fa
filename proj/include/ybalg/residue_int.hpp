#pragma once

// Multiple contour integrals evaluated as finite sums of residues.
//
// Every integration variable is enclosed around simple poles only, so an
// integral reduces to a sum over injective assignments of variables to
// poles; assignments with repeated targets vanish through the numerator and
// are never enumerated. Terms are generated in lexicographic permutation
// order, which fixes the floating-point summation order.

#include "ybalg/spectral_set.hpp"
#include "ybalg/model.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace ybalg {

struct ResidueSum {
    Complex value{0.0, 0.0};
    std::size_t terms = 0;
};

namespace detail {

template <class Visit>
void for_each_permutation(std::size_t n, Visit&& visit) {
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    do {
        visit(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
}

inline void require_separated(const SpectralSet& X, const ModelContext& ctx, const char* what) {
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j)
            if (std::abs(ctx.f(X[i] - X[j])) < kPoleFloor)
                throw CoincidentPoints(std::string(what) + ": points " + std::to_string(i) + " and " +
                                       std::to_string(j) + " coincide; pole order would exceed one");
}

} // namespace detail

/// Residue evaluation of the contour-integral solution for Z_theta(X).
inline ResidueSum z_contour_terms(const SpectralSet& X, Complex theta, const ModelContext& ctx) {
    const int L = ctx.L;
    if (static_cast<int>(X.size()) != L) throw SizeMismatch("contour formula needs |X| = L");
    detail::require_separated(X, ctx, "z_contour");
    const Complex g = ctx.gamma;
    const Complex fp0 = ctx.f_deriv0();
    const Complex fg = ctx.f(g);

    Complex prefactor{1.0, 0.0};
    for (int k = 0; k < L; ++k) prefactor *= fp0 * fg;

    ResidueSum out;
    std::vector<Complex> w(L);
    detail::for_each_permutation(std::size_t(L), [&](const std::vector<std::size_t>& sigma) {
        for (int j = 0; j < L; ++j) w[j] = X[sigma[j]];
        Complex t = prefactor;
        for (int i = 0; i < L; ++i) {
            t /= fp0; // residue of 1/f(w_i - lambda_sigma(i))
            for (int j = 0; j < L; ++j)
                if (static_cast<std::size_t>(j) != sigma[i]) t /= ctx.f(w[i] - X[j]);
        }
        for (int i = 0; i < L; ++i)
            for (int j = i + 1; j < L; ++j) t *= ctx.f(w[j] - w[i] + g) * ctx.f(w[j] - w[i]);
        for (int j = 0; j < L; ++j) {
            const Complex shift = theta + double(j + 1) * g;
            t *= ctx.theta_ratio(shift - w[j] + ctx.mu[j], shift);
        }
        for (int i = 0; i < L; ++i) {
            for (int j = 0; j < i; ++j) t *= ctx.f(ctx.mu[j] - w[i]);
            for (int j = i + 1; j < L; ++j) t *= ctx.f(w[i] - ctx.mu[j] + g);
        }
        out.value += t;
        ++out.terms;
    });
    return out;
}

inline Complex z_contour(const SpectralSet& X, Complex theta, const ModelContext& ctx) {
    return z_contour_terms(X, theta, ctx).value;
}

/// Residue evaluation of the off-shell scalar product S_n(XB | YC),
/// six-vertex regime. Variables w_i are assigned to the C points and
/// wbar_i to the B points; each simple zero of b contributes residue 1.
inline ResidueSum sn_contour_terms(const SpectralSet& XB, const SpectralSet& YC, const ModelContext& ctx) {
    if (!ctx.trigonometric()) throw RegimeMismatch("contour formula for S_n is a six-vertex formula");
    if (XB.size() != YC.size()) throw SizeMismatch("|XB| must equal |YC|");
    const int n = static_cast<int>(XB.size());
    const int L = ctx.L;
    if (n > L) throw SizeMismatch("contour formula for S_n needs n <= L");
    const Complex g = ctx.gamma;
    auto a = [g](Complex x) { return std::sinh(x + g); };
    auto b = [](Complex x) { return std::sinh(x); };
    const Complex c = std::sinh(g);
    const auto& mu = ctx.mu;

    detail::require_separated(XB, ctx, "sn_contour (B points)");
    detail::require_separated(YC, ctx, "sn_contour (C points)");
    for (const SpectralSet* S : {&XB, &YC})
        for (Complex x : *S)
            for (Complex m : mu)
                if (std::abs(b(x - m)) < kPoleFloor) throw CoincidentPoints("sn_contour: a point coincides with some mu_j");

    const int exponent = L * n + n * (n + 1) / 2;
    Complex prefactor = (exponent % 2 == 0) ? Complex{1.0, 0.0} : Complex{-1.0, 0.0};
    for (int k = 0; k < 2 * n; ++k) prefactor *= c;

    ResidueSum out;
    std::vector<Complex> w(n), wb(n);
    detail::for_each_permutation(std::size_t(n), [&](const std::vector<std::size_t>& sg) {
        detail::for_each_permutation(std::size_t(n), [&](const std::vector<std::size_t>& sb) {
            for (int i = 0; i < n; ++i) {
                w[i] = YC[sg[i]];
                wb[i] = XB[sb[i]];
            }
            Complex t = prefactor;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (static_cast<std::size_t>(j) != sg[i]) t /= b(w[i] - YC[j]);
                    if (static_cast<std::size_t>(j) != sb[i]) t /= b(wb[i] - XB[j]);
                }
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    const Complex d = b(w[i] - w[j]), db = b(wb[i] - wb[j]);
                    t *= d * d * db * db * a(w[j] - mu[i]) * a(wb[j] - mu[i]);
                }
            for (int i = 0; i < n; ++i) t /= b(w[i] - mu[i]) * b(wb[i] - mu[i]);
            for (int i = 0; i < n; ++i) {
                Complex pw{1.0, 0.0}, pwb{1.0, 0.0};
                for (int k = i; k < n; ++k) {
                    pw *= a(w[k] - mu[i]) / b(w[k] - mu[i]);
                    pwb *= a(wb[k] - mu[i]) / b(wb[k] - mu[i]);
                }
                const Complex R = pw - pwb;
                if (std::abs(R) < 1e-12 * (std::abs(pw) + std::abs(pwb)))
                    throw SingularR("R_" + std::to_string(i + 1) + " vanishes at a residue assignment; resample");

                Complex first{1.0, 0.0}, second{1.0, 0.0};
                for (int k = i; k < L; ++k) {
                    first *= a(wb[i] - mu[k]) * b(mu[k] - w[i]);
                    second *= a(w[i] - mu[k]) * b(mu[k] - wb[i]);
                }
                for (int k = i + 1; k < n; ++k) {
                    first *= a(w[i] - w[k]) / b(w[i] - w[k]) * a(wb[k] - wb[i]) / b(wb[k] - wb[i]);
                    second *= a(w[k] - w[i]) / b(w[k] - w[i]) * a(wb[i] - wb[k]) / b(wb[i] - wb[k]);
                }
                t *= (first - second) / R;
            }
            out.value += t;
            ++out.terms;
        });
    });
    return out;
}

inline Complex sn_contour(const SpectralSet& XB, const SpectralSet& YC, const ModelContext& ctx) {
    return sn_contour_terms(XB, YC, ctx).value;
}

} // namespace ybalg
