#pragma once

// Dynamical R-matrix, monodromy operators and the Yang-Baxter checks.
//
// Basis conventions: a spin is up (h = +1) when its bit is 0 and down
// (h = -1) when its bit is 1. In a multi-site state, site 0 is the most
// significant bit, so |0> (all up) has index 0 and |0bar> (all down) has
// index 2^L - 1. Two-site matrices use the order (uu, ud, du, dd) with the
// first factor being the auxiliary space.
//
// Operator-valued dynamical arguments theta - gamma * h_k are evaluated on
// the eigenspaces of the diagonal h_k: every column (input basis state) of
// an embedded factor uses the weight of that column.

#include "ybalg/model.hpp"

#include <array>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace ybalg {

using Matrix4 = Eigen::Matrix4cd;

/// R(lambda, theta) in the basis (uu, ud, du, dd). In the trigonometric
/// regime theta is ignored and the symmetric six-vertex matrix is returned.
inline Matrix4 r_matrix(Complex lambda, Complex theta, const ModelContext& ctx) {
    Matrix4 r = Matrix4::Zero();
    if (ctx.trigonometric()) {
        const auto w = trig_weights(lambda, ctx.gamma);
        r(0, 0) = r(3, 3) = w.a;
        r(1, 1) = r(2, 2) = w.b;
        r(1, 2) = r(2, 1) = w.c;
        return r;
    }
    const Complex ft = ctx.f(theta);
    if (std::abs(ft) < kPoleFloor)
        throw DynamicalPole("R-matrix dynamical argument sits on a zero of f: theta = " +
                            std::to_string(theta.real()) + "+" + std::to_string(theta.imag()) + "i");
    const Complex g = ctx.gamma;
    r(0, 0) = r(3, 3) = ctx.f(lambda + g);
    r(1, 1) = ctx.f(lambda) * ctx.f(theta - g) / ft; // b_+
    r(2, 2) = ctx.f(lambda) * ctx.f(theta + g) / ft; // b_-
    r(1, 2) = ctx.f(g) * ctx.f(theta - lambda) / ft; // c_+
    r(2, 1) = ctx.f(g) * ctx.f(theta + lambda) / ft; // c_-
    return r;
}

namespace detail {

inline int bit_of(std::size_t state, int site, int n_sites) {
    return static_cast<int>((state >> (n_sites - 1 - site)) & 1u);
}

inline int weight_of(std::size_t state, std::span<const int> sites, int n_sites) {
    int w = 0;
    for (int s : sites) w += bit_of(state, s, n_sites) == 0 ? 1 : -1;
    return w;
}

/// Embeds a two-site operator R(theta - gamma * sum_{k in shift_sites} h_k)
/// acting on sites (i, j) of an n-site space.
inline Matrix embed_dynamical(int n_sites, int i, int j, std::span<const int> shift_sites, Complex theta,
                              Complex gamma, const std::function<Matrix4(Complex)>& r_of_theta) {
    const std::size_t dim = std::size_t{1} << n_sites;
    Matrix m = Matrix::Zero(dim, dim);
    std::map<int, Matrix4> cache;
    const std::size_t mask_i = std::size_t{1} << (n_sites - 1 - i);
    const std::size_t mask_j = std::size_t{1} << (n_sites - 1 - j);
    for (std::size_t col = 0; col < dim; ++col) {
        const int w = weight_of(col, shift_sites, n_sites);
        auto it = cache.find(w);
        if (it == cache.end()) {
            try {
                it = cache.emplace(w, r_of_theta(theta - gamma * double(w))).first;
            } catch (const DynamicalPole& e) {
                throw DynamicalPole(std::string(e.what()) + " (basis state " + std::to_string(col) +
                                    ", weight shift " + std::to_string(w) + ")");
            }
        }
        const Matrix4& r = it->second;
        const int in = 2 * bit_of(col, i, n_sites) + bit_of(col, j, n_sites);
        const std::size_t base = col & ~(mask_i | mask_j);
        for (int out = 0; out < 4; ++out) {
            const Complex v = r(out, in);
            if (v == Complex{}) continue;
            const std::size_t row = base | ((out >> 1) ? mask_i : 0) | ((out & 1) ? mask_j : 0);
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += v;
        }
    }
    return m;
}

/// Ordered product over the chain sites of R_{aux, site}(lambda - mu, theta_hat)
/// with theta_hat = theta - gamma * (sum of h over later chain sites and `extra_shift`).
inline Matrix monodromy_embedded(Complex lambda, Complex theta, const ModelContext& ctx, int n_sites, int aux,
                                 std::span<const int> chain_sites, std::span<const int> extra_shift = {}) {
    const std::size_t dim = std::size_t{1} << n_sites;
    Matrix t = Matrix::Identity(dim, dim);
    for (std::size_t idx = 0; idx < chain_sites.size(); ++idx) {
        std::vector<int> shift(chain_sites.begin() + idx + 1, chain_sites.end());
        shift.insert(shift.end(), extra_shift.begin(), extra_shift.end());
        const Complex spectral = lambda - ctx.mu[idx];
        t = t * embed_dynamical(n_sites, aux, chain_sites[idx], shift, theta, ctx.gamma,
                                [&](Complex th) { return r_matrix(spectral, th, ctx); });
    }
    return t;
}

inline std::vector<int> iota_sites(int first, int count) {
    std::vector<int> v(count);
    for (int k = 0; k < count; ++k) v[k] = first + k;
    return v;
}

} // namespace detail

/// Residual of the dynamical Yang-Baxter equation on three sites.
inline double verify_dybe(Complex l1, Complex l2, Complex l3, Complex theta, const ModelContext& ctx) {
    auto op = [&](Complex lambda, int i, int j, std::vector<int> shift) {
        return detail::embed_dynamical(3, i, j, shift, theta, ctx.gamma,
                                       [&](Complex th) { return r_matrix(lambda, th, ctx); });
    };
    const Matrix lhs = op(l1 - l2, 0, 1, {2}) * op(l1 - l3, 0, 2, {}) * op(l2 - l3, 1, 2, {0});
    const Matrix rhs = op(l2 - l3, 1, 2, {}) * op(l1 - l3, 0, 2, {1}) * op(l1 - l2, 0, 1, {});
    return residual(lhs, rhs, ctx.tol.abs_floor);
}

struct MonodromyBlocks {
    ChainOperator A, B, C, D;
};

/// The four auxiliary-space blocks of T(lambda, theta) = prod_{i=1..L} R_{a i}(lambda - mu_i, theta_hat_i).
inline MonodromyBlocks monodromy_blocks(Complex lambda, Complex theta, const ModelContext& ctx) {
    const int L = ctx.L;
    const auto chain = detail::iota_sites(1, L);
    const Matrix t = detail::monodromy_embedded(lambda, theta, ctx, L + 1, 0, chain);
    const Eigen::Index d = Eigen::Index{1} << L;
    return {ChainOperator(t.topLeftCorner(d, d)), ChainOperator(t.topRightCorner(d, d)),
            ChainOperator(t.bottomLeftCorner(d, d)), ChainOperator(t.bottomRightCorner(d, d))};
}

/// Residual of the dynamical RLL relation on aux_a (x) aux_b (x) chain.
inline double verify_rll(Complex l1, Complex l2, Complex theta, const ModelContext& ctx) {
    const int L = ctx.L;
    const int n = L + 2;
    const auto chain = detail::iota_sites(2, L);
    const std::vector<int> shift_a{0}, shift_b{1};
    auto r_ab = [&](std::span<const int> shift) {
        return detail::embed_dynamical(n, 0, 1, shift, theta, ctx.gamma,
                                       [&](Complex th) { return r_matrix(l1 - l2, th, ctx); });
    };
    const Matrix lhs = r_ab(chain) * detail::monodromy_embedded(l1, theta, ctx, n, 0, chain) *
                       detail::monodromy_embedded(l2, theta, ctx, n, 1, chain, shift_a);
    const Matrix rhs = detail::monodromy_embedded(l2, theta, ctx, n, 1, chain) *
                       detail::monodromy_embedded(l1, theta, ctx, n, 0, chain, shift_b) * r_ab({});
    return residual(lhs, rhs, ctx.tol.abs_floor);
}

/// H = sum_i h_i, diagonal with (#up - #down) per basis state.
inline ChainOperator weight_operator(const ModelContext& ctx) {
    const int d = ctx.dim();
    Matrix h = Matrix::Zero(d, d);
    const auto sites = detail::iota_sites(0, ctx.L);
    for (int s = 0; s < d; ++s) h(s, s) = double(detail::weight_of(std::size_t(s), sites, ctx.L));
    return ChainOperator(std::move(h));
}

} // namespace ybalg
