#pragma once

// Functional equations obtained by projecting Yang-Baxter relations, and the
// operator identities they come from.

#include "ybalg/lattice_qty.hpp"

#include <functional>
#include <numeric>
#include <string>
#include <utility>

namespace ybalg {

/// Z evaluator: (X, theta) -> Z_theta(X). Injected so that both the
/// brute-force and the contour route can be residual-tested.
using PartitionEvaluator = std::function<Complex(const SpectralSet&, Complex)>;
/// S evaluator: (XB, YC) -> S_n(XB | YC).
using ScalarProductEvaluator = std::function<Complex(const SpectralSet&, const SpectralSet&)>;

inline PartitionEvaluator brute_force_partition(const ModelContext& ctx) {
    return [ctx](const SpectralSet& X, Complex theta) { return dwbc_partition(X, theta, ctx); };
}

inline ScalarProductEvaluator brute_force_scalar_product(const ModelContext& ctx) {
    return [ctx](const SpectralSet& XB, const SpectralSet& YC) { return scalar_product_bf(XB, YC, ctx); };
}

namespace detail {

inline Complex checked_div(Complex num, Complex den, const char* what) {
    if (std::abs(den) < kPoleFloor) throw SingularCoefficient(std::string("vanishing denominator ") + what);
    return num / den;
}

/// |sum| / (sum of |terms| + floor)
class NormalizedSum {
public:
    void add(Complex t) {
        sum_ += t;
        mag_ += std::abs(t);
    }
    double residual(double floor) const { return std::abs(sum_) / (mag_ + floor); }

private:
    Complex sum_{0.0, 0.0};
    double mag_ = 0.0;
};

} // namespace detail

/// Coefficients of M_0 Z_{theta-gamma}(X^{1,L}) + sum_{i=0}^{L} N_i Z_theta(X^{0,L}_i) = 0.
/// `n[i]` multiplies Z_theta with lambda_i removed from {lambda_0} u X; n[0]
/// multiplies Z_theta(X) itself.
struct FxCoefficients {
    Complex m0;
    std::vector<Complex> n;
};

inline FxCoefficients fx_coefficients(Complex l0, const SpectralSet& X, Complex theta, const ModelContext& ctx) {
    using detail::checked_div;
    const int L = ctx.L;
    if (static_cast<int>(X.size()) != L) throw SizeMismatch("functional equation needs |X| = L");
    const Complex g = ctx.gamma;
    FxCoefficients out;
    out.m0 = ctx.theta_ratio(theta, theta + double(L) * g);
    for (Complex m : ctx.mu) out.m0 *= ctx.f(l0 - m);

    const SpectralSet X0 = X.prepend(l0);
    for (int i = 0; i <= L; ++i) {
        const Complex li = X0[i];
        Complex n = -ctx.theta_ratio(theta + g + l0 - li, theta + double(L + 1) * g) *
                    checked_div(ctx.f(g), ctx.f(l0 - li + g), "f(lambda_0 - lambda_i + gamma)");
        for (Complex m : ctx.mu) n *= ctx.f(li - m + g);
        for (int k = 0; k <= L; ++k) {
            if (k == i) continue;
            n *= checked_div(ctx.f(X0[k] - li + g), ctx.f(X0[k] - li), "f(lambda - lambda_i)");
        }
        out.n.push_back(n);
    }
    return out;
}

inline double fx_residual(Complex l0, const SpectralSet& X, Complex theta, const ModelContext& ctx,
                          const PartitionEvaluator& Z) {
    const auto c = fx_coefficients(l0, X, theta, ctx);
    const SpectralSet X0 = X.prepend(l0);
    detail::NormalizedSum s;
    s.add(c.m0 * Z(X, theta - ctx.gamma));
    for (int i = 0; i <= ctx.L; ++i) s.add(c.n[i] * Z(X0.remove(i), theta));
    return s.residual(ctx.tol.abs_floor);
}

struct SnadCoefficients {
    Complex j0, jt0;
    std::vector<Complex> kb, kc, ktb, ktc;
    static constexpr double alpha_b = 1.0;
    static constexpr double alpha_c = -1.0;
};

inline SnadCoefficients snad_coefficients(Complex l0, const SpectralSet& XB, const SpectralSet& YC,
                                          const ModelContext& ctx) {
    using detail::checked_div;
    if (!ctx.trigonometric()) throw RegimeMismatch("scalar-product equations live in the trigonometric regime");
    if (XB.size() != YC.size()) throw SizeMismatch("|XB| must equal |YC|");
    const Complex g = ctx.gamma;
    const std::size_t n = XB.size();
    auto a = [g](Complex x) { return std::sinh(x + g); };
    auto b = [](Complex x) { return std::sinh(x); };
    const Complex c = std::sinh(g);
    // a(x)/b(x)
    auto ratio = [&](Complex x) { return checked_div(a(x), b(x), "b(...) in a/b ratio"); };

    SnadCoefficients out;
    Complex pa{1.0, 0.0}, pb{1.0, 0.0};
    for (Complex m : ctx.mu) {
        pa *= a(l0 - m);
        pb *= b(l0 - m);
    }
    Complex yc_fwd{1.0, 0.0}, xb_fwd{1.0, 0.0}, yc_bwd{1.0, 0.0}, xb_bwd{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        yc_fwd *= ratio(YC[i] - l0);
        xb_fwd *= ratio(XB[i] - l0);
        yc_bwd *= ratio(l0 - YC[i]);
        xb_bwd *= ratio(l0 - XB[i]);
    }
    out.j0 = pa * (yc_fwd - xb_fwd);
    out.jt0 = pb * (yc_bwd - xb_bwd);

    auto family = [&](const SpectralSet& V, double alpha, std::vector<Complex>& k, std::vector<Complex>& kt) {
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vi = V[i];
            Complex ki = alpha * checked_div(c, b(vi - l0), "b(lambda_i - lambda_0)");
            Complex kti = alpha * checked_div(c, b(l0 - vi), "b(lambda_0 - lambda_i)");
            for (Complex m : ctx.mu) {
                ki *= a(vi - m);
                kti *= b(vi - m);
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                ki *= ratio(V[j] - vi);
                kti *= ratio(vi - V[j]);
            }
            k.push_back(ki);
            kt.push_back(kti);
        }
    };
    family(XB, SnadCoefficients::alpha_b, out.kb, out.ktb);
    family(YC, SnadCoefficients::alpha_c, out.kc, out.ktc);
    return out;
}

/// Normalized residuals of the A-type and D-type scalar-product equations.
inline std::pair<double, double> snad_residuals(Complex l0, const SpectralSet& XB, const SpectralSet& YC,
                                                const ModelContext& ctx, const ScalarProductEvaluator& S) {
    const auto c = snad_coefficients(l0, XB, YC, ctx);
    detail::NormalizedSum ea, ed;
    const Complex s0 = S(XB, YC);
    ea.add(c.j0 * s0);
    ed.add(c.jt0 * s0);
    for (std::size_t i = 0; i < XB.size(); ++i) {
        const Complex sb = S(XB.swap_in(i, l0), YC);
        const Complex sc = S(XB, YC.swap_in(i, l0));
        ea.add(c.kb[i] * sb);
        ea.add(c.kc[i] * sc);
        ed.add(c.ktb[i] * sb);
        ed.add(c.ktc[i] * sc);
    }
    return {ea.residual(ctx.tol.abs_floor), ed.residual(ctx.tol.abs_floor)};
}

/// pi(F) = <psi'| F |psi> with plain-transpose bras.
inline Complex project(const ChainOperator& op, const Vector& bra, const Vector& ket) {
    return bra.transpose() * op.matrix() * ket;
}

enum class IdentityTag { AB, BB, ABn, TAY, TDY };

struct IdentityKind {
    IdentityTag tag;
    int n = 1;

    static IdentityKind ab() { return {IdentityTag::AB, 1}; }
    static IdentityKind bb() { return {IdentityTag::BB, 1}; }
    static IdentityKind abn(int n) { return {IdentityTag::ABn, n}; }
    static IdentityKind tay(int n) { return {IdentityTag::TAY, n}; }
    static IdentityKind tdy(int n) { return {IdentityTag::TDY, n}; }

    std::string name() const {
        switch (tag) {
        case IdentityTag::AB: return "AB";
        case IdentityTag::BB: return "BB";
        case IdentityTag::ABn: return "ABn(" + std::to_string(n) + ")";
        case IdentityTag::TAY: return "TAY(" + std::to_string(n) + ")";
        case IdentityTag::TDY: return "TDY(" + std::to_string(n) + ")";
        }
        return "?";
    }
};

/// Arguments of an identity. AB and BB use (lambda0, xb[0]); ABn uses
/// lambda0 and the n points of xb; TAY/TDY use lambda0, xb and yc.
struct IdentityArgs {
    Complex lambda0;
    SpectralSet xb;
    SpectralSet yc;
    Complex theta{0.0, 0.0};
};

namespace detail {

inline Matrix ordered_product(const std::vector<Matrix>& ops, int dim) {
    Matrix m = Matrix::Identity(dim, dim);
    for (const auto& o : ops) m = m * o;
    return m;
}

inline double identity_ab(const IdentityArgs& p, const ModelContext& ctx) {
    const Complex l1 = p.lambda0, l2 = p.xb[0];
    const auto w = trig_weights(l2 - l1, ctx.gamma);
    if (std::abs(w.b) < kPoleFloor) throw SingularCoefficient("b(lambda_2 - lambda_1) = 0");
    const auto m1 = monodromy_blocks(l1, 0.0, ctx), m2 = monodromy_blocks(l2, 0.0, ctx);
    const Matrix lhs = m1.A.matrix() * m2.B.matrix();
    const Matrix rhs = (w.a / w.b) * m2.B.matrix() * m1.A.matrix() - (w.c / w.b) * m1.B.matrix() * m2.A.matrix();
    return residual(lhs, rhs, ctx.tol.abs_floor);
}

inline double identity_bb(const IdentityArgs& p, const ModelContext& ctx) {
    const Complex l1 = p.lambda0, l2 = p.xb[0], th = p.theta, g = ctx.gamma;
    auto B = [&](Complex l, Complex t) { return monodromy_blocks(l, t, ctx).B.matrix(); };
    auto A = [&](Complex l, Complex t) { return monodromy_blocks(l, t, ctx).A.matrix(); };
    const double exchange = residual(Matrix(B(l1, th) * B(l2, th + g)), Matrix(B(l2, th) * B(l1, th + g)),
                                     ctx.tol.abs_floor);
    const Complex f21 = ctx.f(l2 - l1);
    if (std::abs(f21) < kPoleFloor) throw SingularCoefficient("f(lambda_2 - lambda_1) = 0");
    const Matrix lhs = A(l1, th + g) * B(l2, th);
    const Matrix rhs =
        (ctx.f(l2 - l1 + g) / f21 * ctx.theta_ratio(th + g, th + 2.0 * g)) * B(l2, th + g) * A(l1, th + 2.0 * g) -
        (ctx.f(g) / f21 * ctx.theta_ratio(th + g - l2 + l1, th + 2.0 * g)) * B(l1, th + g) * A(l2, th + 2.0 * g);
    return std::max(exchange, residual(lhs, rhs, ctx.tol.abs_floor));
}

inline double identity_abn(const IdentityArgs& p, const ModelContext& ctx) {
    const int n = static_cast<int>(p.xb.size());
    const Complex l0 = p.lambda0, th = p.theta, g = ctx.gamma;
    const Complex top = th + double(n + 1) * g;
    auto Y = [&](const SpectralSet& X, Complex t) { return ordered_b_product(X, t, ctx).matrix(); };
    auto A = [&](Complex l, Complex t) { return monodromy_blocks(l, t, ctx).A.matrix(); };

    const Matrix lhs = A(l0, th + g) * Y(p.xb, th - g);
    Complex lead = ctx.theta_ratio(th + g, top);
    for (int j = 0; j < n; ++j) lead *= checked_div(ctx.f(p.xb[j] - l0 + g), ctx.f(p.xb[j] - l0), "f(lambda_j - lambda_0)");
    Matrix rhs = lead * Y(p.xb, th) * A(l0, top);
    for (int i = 0; i < n; ++i) {
        const Complex li = p.xb[i];
        Complex coef = ctx.theta_ratio(th + g - li + l0, top) *
                       checked_div(ctx.f(g), ctx.f(li - l0), "f(lambda_i - lambda_0)");
        for (int j = 0; j < n; ++j)
            if (j != i) coef *= checked_div(ctx.f(p.xb[j] - li + g), ctx.f(p.xb[j] - li), "f(lambda_j - lambda_i)");
        rhs -= coef * Y(p.xb.swap_in(i, l0), th) * A(li, top);
    }
    return residual(lhs, rhs, ctx.tol.abs_floor);
}

// TAY (diagonal = A) and TDY (diagonal = D). For TDY every spectral
// difference is reversed relative to TAY.
inline double identity_t(const IdentityArgs& p, const ModelContext& ctx, bool use_d) {
    const std::size_t n = p.xb.size();
    if (p.yc.size() != n) throw SizeMismatch("TAY/TDY need |XB| = |YC|");
    const int dim = ctx.dim();
    auto diag = [&](Complex l) {
        const auto m = monodromy_blocks(l, 0.0, ctx);
        return use_d ? m.D.matrix() : m.A.matrix();
    };
    auto Bs = [&](const SpectralSet& X) {
        std::vector<Matrix> ops;
        for (Complex x : X) ops.push_back(monodromy_blocks(x, 0.0, ctx).B.matrix());
        return ordered_product(ops, dim);
    };
    auto Cs = [&](const SpectralSet& Y) {
        std::vector<Matrix> ops;
        for (std::size_t i = Y.size(); i-- > 0;) ops.push_back(monodromy_blocks(Y[i], 0.0, ctx).C.matrix());
        return ordered_product(ops, dim);
    };
    // a(u - v)/b(u - v) and c/b(u - v) with the orientation flipped for TDY
    auto ab = [&](Complex u, Complex v) {
        const auto w = trig_weights(use_d ? v - u : u - v, ctx.gamma);
        return checked_div(w.a, w.b, "b(...)");
    };
    auto cb = [&](Complex u, Complex v) {
        const auto w = trig_weights(use_d ? v - u : u - v, ctx.gamma);
        return checked_div(w.c, w.b, "b(...)");
    };
    const Complex l0 = p.lambda0;
    const Matrix CB = Cs(p.yc) * Bs(p.xb);

    Complex lead_c{1.0, 0.0}, lead_b{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        lead_c *= ab(p.yc[i], l0);
        lead_b *= ab(p.xb[i], l0);
    }
    Matrix lhs = lead_c * diag(l0) * CB;
    Matrix rhs = lead_b * CB * diag(l0);
    for (std::size_t i = 0; i < n; ++i) {
        Complex kc = cb(p.yc[i], l0), kb = cb(p.xb[i], l0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            // TAY: a(l_j - l_i)/b(l_j - l_i); TDY: a(l_i - l_j)/b(l_i - l_j)
            kc *= ab(p.yc[j], p.yc[i]);
            kb *= ab(p.xb[j], p.xb[i]);
        }
        lhs -= kc * diag(p.yc[i]) * Cs(p.yc.swap_in(i, l0)) * Bs(p.xb);
        rhs -= kb * Cs(p.yc) * Bs(p.xb.swap_in(i, l0)) * diag(p.xb[i]);
    }
    return residual(lhs, rhs, ctx.tol.abs_floor);
}

} // namespace detail

/// Residual rho(LHS, RHS) of an operator identity built from monodromy blocks.
inline double verify_identity(const IdentityKind& kind, const IdentityArgs& args, const ModelContext& ctx) {
    const bool six_vertex_only = kind.tag == IdentityTag::AB || kind.tag == IdentityTag::TAY || kind.tag == IdentityTag::TDY;
    if (six_vertex_only && !ctx.trigonometric())
        throw RegimeMismatch(kind.name() + " is a six-vertex relation; use the trigonometric regime");
    if (kind.n < 1) throw SizeMismatch("identity degree n must be >= 1");
    const std::size_t need = (kind.tag == IdentityTag::AB || kind.tag == IdentityTag::BB) ? 1 : std::size_t(kind.n);
    if (args.xb.size() != need) throw SizeMismatch(kind.name() + " needs " + std::to_string(need) + " points in xb");
    switch (kind.tag) {
    case IdentityTag::AB: return detail::identity_ab(args, ctx);
    case IdentityTag::BB: return detail::identity_bb(args, ctx);
    case IdentityTag::ABn: return detail::identity_abn(args, ctx);
    case IdentityTag::TAY: return detail::identity_t(args, ctx, false);
    case IdentityTag::TDY: return detail::identity_t(args, ctx, true);
    }
    return 0.0;
}

/// Second derivation route for the functional equation: project the degree
/// L+1 operator relation with (<0bar|, |0>) term by term, check that the
/// highest-weight reductions turn each projected term into coefficient x Z,
/// and check the projected relation itself. Returns the largest residual.
inline double fx_projected_residual(Complex l0, const SpectralSet& X, Complex theta, const ModelContext& ctx) {
    const int L = ctx.L;
    const Complex g = ctx.gamma;
    const Complex top = theta + double(L + 1) * g;
    const BoundaryVectors bv(L);
    auto A = [&](Complex l, Complex t) { return monodromy_blocks(l, t, ctx).A; };
    auto pi = [&](const ChainOperator& op) { return project(op, bv.ket0bar, bv.ket0); };

    double worst = 0.0;
    // <0bar| A(l0, theta + gamma) Y_{theta - gamma}(X) |0> = M_0 Z_{theta - gamma}(X)
    const auto coeffs = fx_coefficients(l0, X, theta, ctx);
    const Complex lhs_proj = pi(A(l0, theta + g) * ordered_b_product(X, theta - g, ctx));
    worst = std::max(worst, residual(lhs_proj, coeffs.m0 * dwbc_partition(X, theta - g, ctx), ctx.tol.abs_floor));

    // <0bar| Y_theta(X') A(l_i, top) |0> = prod_j f(l_i - mu_j + gamma) Z_theta(X')
    const SpectralSet X0 = X.prepend(l0);
    detail::NormalizedSum projected;
    projected.add(lhs_proj);
    for (int i = 0; i <= L; ++i) {
        const SpectralSet Xi = X0.remove(i);
        const Complex term = pi(ordered_b_product(Xi, theta, ctx) * A(X0[i], top));
        Complex eig{1.0, 0.0};
        for (Complex m : ctx.mu) eig *= ctx.f(X0[i] - m + g);
        worst = std::max(worst, residual(term, eig * dwbc_partition(Xi, theta, ctx), ctx.tol.abs_floor));
        // N_i already carries the eigenvalue; divide it back out to weight the projected term
        projected.add(coeffs.n[i] / eig * term);
    }
    return std::max(worst, projected.residual(ctx.tol.abs_floor));
}

} // namespace ybalg
