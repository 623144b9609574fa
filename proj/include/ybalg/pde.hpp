#pragma once

// Differential structure of the six-vertex functional equation.
//
// With x_i = exp(2 lambda_i), y_i = exp(2 mu_i) and q = exp(gamma) the
// partition function is Z = prod_j x_j^{(1-L)/2} Zbar(x) with Zbar of degree
// L-1 in each variable. The replacement operator D_i^0 then has an exact
// truncated Taylor realization on Zbar, and the functional equation becomes
// a polynomial in x_0 whose coefficients Omega_k annihilate Zbar.
//
// Half-integer powers of x are always formed as exp(k lambda) from the
// original lambda so no square-root branch is ever chosen.

#include "ybalg/feq.hpp"
#include "ybalg/multipoly.hpp"

#include <array>
#include <functional>
#include <span>

namespace ybalg {

struct PdeVars {
    std::vector<Complex> lambda; // spectral parameters lambda_1..lambda_L
    std::vector<Complex> mu;
    std::vector<Complex> x; // exp(2 lambda)
    std::vector<Complex> y; // exp(2 mu)
    Complex q;              // exp(gamma)

    static PdeVars from(const SpectralSet& X, const ModelContext& ctx) {
        PdeVars v;
        v.lambda = X.values();
        v.mu = ctx.mu;
        for (Complex l : v.lambda) v.x.push_back(std::exp(2.0 * l));
        for (Complex m : v.mu) v.y.push_back(std::exp(2.0 * m));
        v.q = std::exp(ctx.gamma);
        return v;
    }

    // abar(x, y) = x q^2 - y,  bbar(x, y) = x - y
    Complex abar(Complex u, Complex w) const { return u * q * q - w; }
    static Complex bbar(Complex u, Complex w) { return u - w; }
};

using PointFunction = std::function<Complex(std::span<const Complex>)>;

/// D_i^alpha by literal substitution: the returned function reads the full
/// point (original variables followed by external ones) and evaluates `f`
/// with z_i replaced by z_alpha. Requires i < nvars <= alpha.
inline PointFunction dia_apply(PointFunction f, std::size_t nvars, std::size_t i, std::size_t alpha) {
    if (i >= nvars) throw IndexError("D_i^alpha: i must index one of the function's variables");
    if (alpha < nvars) throw IndexError("D_i^alpha: alpha must index an external variable");
    return [f = std::move(f), i, alpha](std::span<const Complex> z) {
        if (alpha >= z.size()) throw IndexError("D_i^alpha: point does not supply z_alpha");
        std::vector<Complex> w(z.begin(), z.end());
        w[i] = z[alpha];
        return f(w);
    };
}

/// D_i^alpha through sum_{k=0}^{m} (z_alpha - z_i)^k / k! d^k/dz_i^k, exact on
/// polynomials of degree <= m in z_i. `m < 0` means m = p.max_deg().
inline Complex dia_realized(const MultiPoly& p, int i, Complex alpha_value, std::span<const Complex> point, int m = -1) {
    if (i < 0 || i >= p.nvars()) throw IndexError("D_i^alpha: variable index out of range");
    if (point.size() < std::size_t(p.nvars())) throw IndexError("D_i^alpha: point is shorter than the variable list");
    point = point.first(std::size_t(p.nvars()));
    if (m < 0) m = p.max_deg();
    if (p.degree_in(i) > m)
        throw DegreeMismatch("polynomial has degree " + std::to_string(p.degree_in(i)) + " in z_" +
                             std::to_string(i) + " but the realization is truncated at m = " + std::to_string(m));
    const Complex h = alpha_value - point[i];
    Complex sum{0.0, 0.0}, hk{1.0, 0.0};
    double factorial = 1.0;
    MultiPoly deriv = p;
    for (int k = 0; k <= m; ++k) {
        if (k > 0) {
            deriv = deriv.derivative(i, 1);
            factorial *= k;
            hk *= h;
        }
        sum += hk / factorial * deriv.evaluate(point);
    }
    return sum;
}

namespace detail {

inline Complex exp_power(std::span<const Complex> lambdas, double k) {
    Complex s{0.0, 0.0};
    for (Complex l : lambdas) s += l;
    return std::exp(k * s);
}

inline std::vector<Complex> interpolation_nodes(int count) {
    std::vector<Complex> nodes;
    for (int k = 0; k < count; ++k) {
        const double re = count == 1 ? 0.2 : 0.8 * (2.0 * k / (count - 1) - 1.0);
        nodes.emplace_back(re, 0.15 * std::cos(1.7 * k));
    }
    return nodes;
}

/// Applies the inverse Vandermonde along every mode of a dense tensor.
inline std::vector<Complex> tensor_solve(const Matrix& vinv, std::vector<Complex> values, int nvars) {
    const int N = static_cast<int>(vinv.rows());
    std::size_t total = values.size();
    for (int mode = 0; mode < nvars; ++mode) {
        std::size_t stride = 1;
        for (int k = mode + 1; k < nvars; ++k) stride *= std::size_t(N);
        const std::size_t block = stride * std::size_t(N);
        std::vector<Complex> out(total);
        for (std::size_t outer = 0; outer < total; outer += block)
            for (std::size_t inner = 0; inner < stride; ++inner)
                for (int r = 0; r < N; ++r) {
                    Complex acc{0.0, 0.0};
                    for (int c = 0; c < N; ++c) acc += vinv(r, c) * values[outer + std::size_t(c) * stride + inner];
                    out[outer + std::size_t(r) * stride + inner] = acc;
                }
        values = std::move(out);
    }
    return values;
}

} // namespace detail

/// Zbar(x) = prod_j exp((L-1) lambda_j) Z(X), from the brute-force Z.
inline Complex zbar_value(const SpectralSet& X, const ModelContext& ctx) {
    return detail::exp_power(X.values(), double(ctx.L - 1)) * dwbc_partition(X, 0.0, ctx);
}

/// Reconstructs Zbar by tensor-product interpolation of the brute-force
/// partition function on the nodes x_k = exp(2 lambda_k), one node set shared
/// by every variable. With N nodes the result has degree bound N - 1.
inline MultiPoly interpolate_zbar(const ModelContext& ctx, std::span<const Complex> lam) {
    if (!ctx.trigonometric()) throw RegimeMismatch("Zbar is a six-vertex object");
    if (ctx.L > 4) throw SizeMismatch("interpolate_zbar is limited to L <= 4");
    const int L = ctx.L;
    const int N = static_cast<int>(lam.size());
    if (N < 1) throw GridDegenerate("no interpolation nodes");
    std::vector<Complex> xs;
    for (Complex l : lam) xs.push_back(std::exp(2.0 * l));
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            if (std::abs(xs[a] - xs[b]) < 1e-8)
                throw GridDegenerate("interpolation nodes " + std::to_string(a) + " and " + std::to_string(b) +
                                     " nearly coincide in x = exp(2 lambda)");

    // Z = <0bar| B(l_{i1}) ... B(l_{iL}) |0>; B does not depend on theta here.
    std::vector<Matrix> bmat;
    for (Complex l : lam) bmat.push_back(monodromy_blocks(l, 0.0, ctx).B.matrix());
    const BoundaryVectors bv(L);

    std::size_t total = 1;
    for (int k = 0; k < L; ++k) total *= std::size_t(N);
    std::vector<Complex> values(total);
    std::vector<int> idx(L);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (int k = L - 1; k >= 0; --k) {
            idx[k] = static_cast<int>(rem % std::size_t(N));
            rem /= std::size_t(N);
        }
        Vector v = bv.ket0;
        Complex lsum{0.0, 0.0};
        for (int k = L - 1; k >= 0; --k) {
            v = bmat[idx[k]] * v;
            lsum += lam[idx[k]];
        }
        values[flat] = std::exp(double(L - 1) * lsum) * bv.ket0bar.dot(v);
    }

    Matrix vander(N, N);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) vander(r, c) = std::pow(xs[r], c);
    const Matrix vinv = vander.inverse();
    MultiPoly out(L, N - 1);
    const auto coeffs = detail::tensor_solve(vinv, std::move(values), L);
    std::copy(coeffs.begin(), coeffs.end(), out.coeffs().begin());
    return out;
}

/// Interpolation on L + extra_nodes built-in nodes. With extra_nodes > 0 the
/// surplus coefficients measure how well the degree bound L - 1 holds.
inline MultiPoly interpolate_zbar(const ModelContext& ctx, int extra_nodes = 0) {
    if (extra_nodes < 0) throw DegreeMismatch("extra_nodes must be non-negative");
    const auto nodes = detail::interpolation_nodes(ctx.L + extra_nodes);
    return interpolate_zbar(ctx, nodes);
}

/// Normalized residual of Mbar_0 Z(X) + sum_i Nbar_i Z(X^{0,L}_i) = 0.
inline double fzt_residual(Complex l0, const SpectralSet& X, const ModelContext& ctx, const PartitionEvaluator& Z) {
    using detail::checked_div;
    if (!ctx.trigonometric()) throw RegimeMismatch("the six-vertex functional equation needs the trigonometric regime");
    const int L = ctx.L;
    if (static_cast<int>(X.size()) != L) throw SizeMismatch("functional equation needs |X| = L");
    const Complex g = ctx.gamma;
    auto a = [g](Complex x) { return std::sinh(x + g); };
    auto b = [](Complex x) { return std::sinh(x); };
    const Complex c = std::sinh(g);

    Complex pb{1.0, 0.0}, pa{1.0, 0.0}, cross{1.0, 0.0};
    for (Complex m : ctx.mu) {
        pb *= b(l0 - m);
        pa *= a(l0 - m);
    }
    for (Complex lj : X) cross *= checked_div(a(lj - l0), b(lj - l0), "b(lambda_j - lambda_0)");
    const Complex m0 = pb - pa * cross;

    detail::NormalizedSum s;
    s.add(m0 * Z(X, 0.0));
    for (int i = 0; i < L; ++i) {
        const Complex li = X[i];
        Complex n = checked_div(c, b(li - l0), "b(lambda_i - lambda_0)");
        for (Complex m : ctx.mu) n *= a(li - m);
        for (int j = 0; j < L; ++j)
            if (j != i) n *= checked_div(a(X[j] - li), b(X[j] - li), "b(lambda_j - lambda_i)");
        s.add(n * Z(X.swap_in(i, l0), 0.0));
    }
    return s.residual(ctx.tol.abs_floor);
}

struct OmegaResult {
    std::vector<Complex> coeffs; // (Omega_k Zbar)(point), k = 0..L-2
    double term_scale = 0.0;     // largest individual term magnitude in g(x_0)
    double heldout = 0.0;        // |g(x_held) - interpolant(x_held)| / term_scale

    double null_residual() const {
        double m = 0.0;
        for (auto c : coeffs) m = std::max(m, std::abs(c));
        return m / std::max(term_scale, 1e-300);
    }
};

namespace detail {

// Candidate lambda_0 nodes for sampling g(x_0); filtered against the point.
inline constexpr std::array<Complex, 10> kX0Candidates{{{0.37, 0.21},
                                                        {-0.52, 0.33},
                                                        {0.81, -0.27},
                                                        {-0.14, -0.36},
                                                        {0.63, 0.05},
                                                        {-0.88, 0.12},
                                                        {0.05, 0.39},
                                                        {-0.33, -0.08},
                                                        {0.22, -0.31},
                                                        {0.95, 0.3}}};

struct LinearTerms {
    Complex value;
    double scale;
};

/// g(x_0) = nu(x_0) [Mcheck_0 + sum_i Ncheck_i D_i^0] P at the point, where
/// nu = 2^L prod_j exp(mu_j) exp(L lambda_0) prod_j exp((L-1) lambda_j) / (x_0 (1 - q^{-2}))
/// removes the non-polynomial prefactor so that g is a polynomial of degree
/// L-2 in x_0 whose leading coefficient is Omega_{L-2} P.
inline LinearTerms functional_operator(const MultiPoly& p, const PdeVars& v, Complex l0, const ModelContext& ctx) {
    const int L = ctx.L;
    const Complex g = ctx.gamma;
    auto a = [g](Complex x) { return std::sinh(x + g); };
    auto b = [](Complex x) { return std::sinh(x); };
    const Complex c = std::sinh(g);
    const Complex x0 = std::exp(2.0 * l0);

    Complex pb{1.0, 0.0}, pa{1.0, 0.0}, cross{1.0, 0.0};
    for (Complex m : v.mu) {
        pb *= b(l0 - m);
        pa *= a(l0 - m);
    }
    for (Complex lj : v.lambda) cross *= checked_div(a(lj - l0), b(lj - l0), "b(lambda_j - lambda_0)");
    const Complex mbar0 = pb - pa * cross;
    const Complex mcheck0 = mbar0 * exp_power(v.lambda, double(1 - L));

    const Complex nu = std::pow(2.0, L) * exp_power(v.mu, 1.0) * std::exp(double(L) * l0) *
                       exp_power(v.lambda, double(L - 1)) / (x0 * (1.0 - 1.0 / (v.q * v.q)));

    LinearTerms out{nu * mcheck0 * p.evaluate(v.x), 0.0};
    out.scale = std::abs(out.value);
    for (int i = 0; i < L; ++i) {
        const Complex li = v.lambda[i];
        Complex nbar = checked_div(c, b(li - l0), "b(lambda_i - lambda_0)");
        for (Complex m : v.mu) nbar *= a(li - m);
        for (int j = 0; j < L; ++j)
            if (j != i) nbar *= checked_div(a(v.lambda[j] - li), b(v.lambda[j] - li), "b(lambda_j - lambda_i)");
        Complex others{0.0, 0.0};
        for (int j = 0; j < L; ++j)
            if (j != i) others += v.lambda[j];
        const Complex ncheck = nbar * std::exp(double(1 - L) * (l0 + others));
        const Complex t = nu * ncheck * dia_realized(p, i, x0, v.x);
        out.value += t;
        out.scale = std::max(out.scale, std::abs(t));
    }
    return out;
}

} // namespace detail

/// Extracts (Omega_k P)(point), k = 0..L-2, by sampling the normalized
/// functional operator at L-1 values of x_0 and interpolating in x_0. One
/// further node is held out to confirm that g is polynomial of degree L-2.
inline OmegaResult omega_actions(const MultiPoly& p, const PdeVars& v, const ModelContext& ctx) {
    if (!ctx.trigonometric()) throw RegimeMismatch("the PDE family is derived in the six-vertex regime");
    const int L = ctx.L;
    if (L < 2) throw SizeMismatch("the Omega family needs L >= 2");
    if (p.nvars() != L || static_cast<int>(v.lambda.size()) != L) throw SizeMismatch("polynomial/point size differs from L");

    std::vector<Complex> nodes;
    for (Complex cand : detail::kX0Candidates) {
        bool ok = true;
        for (Complex li : v.lambda) ok = ok && std::abs(std::sinh(cand - li)) > 0.05;
        if (ok) nodes.push_back(cand);
        if (static_cast<int>(nodes.size()) == L) break;
    }
    if (static_cast<int>(nodes.size()) < L)
        throw InterpolationIllConditioned("could not place x_0 nodes away from the point");

    const int K = L - 1;
    Matrix vander(K, K);
    Vector rhs(K);
    OmegaResult out;
    for (int r = 0; r < K; ++r) {
        const auto t = detail::functional_operator(p, v, nodes[r], ctx);
        const Complex x0 = std::exp(2.0 * nodes[r]);
        for (int c = 0; c < K; ++c) vander(r, c) = std::pow(x0, c);
        rhs(r) = t.value;
        out.term_scale = std::max(out.term_scale, t.scale);
    }
    Eigen::FullPivLU<Matrix> lu(vander);
    if (lu.rcond() < 1e-12) throw InterpolationIllConditioned("x_0 Vandermonde is ill-conditioned");
    const Vector coeffs = lu.solve(rhs);
    out.coeffs.assign(coeffs.data(), coeffs.data() + K);

    const auto held = detail::functional_operator(p, v, nodes[K], ctx);
    out.term_scale = std::max(out.term_scale, held.scale);
    const Complex xh = std::exp(2.0 * nodes[K]);
    Complex pred{0.0, 0.0};
    for (int k = K - 1; k >= 0; --k) pred = pred * xh + out.coeffs[k];
    out.heldout = std::abs(pred - held.value) / std::max(out.term_scale, 1e-300);
    return out;
}

struct LeadingResult {
    Complex value;
    double term_scale;
};

/// Omega_{L-2} P from its closed form
///   sum_i abar(x_i, y_i) - q^{2(1-L)}/(L-1)! sum_i prod_j abar(x_i, y_j)
///     prod_{j != i} abar(x_j, x_i)/bbar(x_j, x_i) d^{L-1}/dx_i^{L-1}.
inline LeadingResult omega_leading_terms(const MultiPoly& p, const PdeVars& v, const ModelContext& ctx) {
    const int L = ctx.L;
    if (L < 2) throw SizeMismatch("Omega_{L-2} needs L >= 2");
    if (p.nvars() != L || static_cast<int>(v.x.size()) != L) throw SizeMismatch("polynomial/point size differs from L");
    Complex potential{0.0, 0.0};
    for (int i = 0; i < L; ++i) potential += v.abar(v.x[i], v.y[i]);
    LeadingResult out{potential * p.evaluate(v.x), 0.0};
    out.term_scale = std::abs(out.value);
    double factorial = 1.0;
    for (int k = 2; k < L; ++k) factorial *= k;
    const Complex qpow = std::pow(v.q, 2.0 * (1 - L));
    for (int i = 0; i < L; ++i) {
        Complex coef = qpow / factorial;
        for (int j = 0; j < L; ++j) coef *= v.abar(v.x[i], v.y[j]);
        for (int j = 0; j < L; ++j) {
            if (j == i) continue;
            const Complex den = PdeVars::bbar(v.x[j], v.x[i]);
            if (std::abs(den) < kPoleFloor) throw CoincidentPoints("x_i coincide in Omega_{L-2}");
            coef *= v.abar(v.x[j], v.x[i]) / den;
        }
        const Complex t = coef * p.derivative(i, L - 1).evaluate(v.x);
        out.value -= t;
        out.term_scale = std::max(out.term_scale, std::abs(t));
    }
    return out;
}

inline Complex omega_leading_apply(const MultiPoly& p, const PdeVars& v, const ModelContext& ctx) {
    return omega_leading_terms(p, v, ctx).value;
}

} // namespace ybalg
