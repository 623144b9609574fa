#include "common.hpp"

#include "ybalg/feq.hpp"
#include "ybalg/residue_int.hpp"

#include <gtest/gtest.h>

using namespace ybalg;
using namespace ybalg::testing;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

// Second transcription of the functional-equation coefficients. Written
// against the displayed formulas without sharing code with fx_coefficients.
FxCoefficients fx_oracle(Complex l0, const SpectralSet& X, Complex th, const ModelContext& ctx) {
    const int L = ctx.L;
    const Complex g = ctx.gamma;
    auto f = [&](Complex x) { return ctx.f(x); };
    auto dyn = [&](Complex a, Complex b) { return ctx.trigonometric() ? Complex(1.0, 0.0) : f(a) / f(b); };
    std::vector<Complex> all{l0};
    for (Complex x : X) all.push_back(x);

    FxCoefficients out;
    out.m0 = dyn(th, th + g * double(L));
    for (int j = 0; j < L; ++j) out.m0 = out.m0 * f(l0 - ctx.mu[j]);
    for (int i = 0; i <= L; ++i) {
        const Complex li = all[i];
        Complex num = -f(g) * dyn(th + g + l0 - li, th + g * double(L + 1));
        Complex den = f(l0 - li + g);
        for (int j = 0; j < L; ++j) num = num * f(li - ctx.mu[j] + g);
        for (int k = 0; k <= L; ++k)
            if (k != i) {
                num = num * f(all[k] - li + g);
                den = den * f(all[k] - li);
            }
        out.n.push_back(num / den);
    }
    return out;
}

SnadCoefficients snad_oracle(Complex l0, const SpectralSet& XB, const SpectralSet& YC, const ModelContext& ctx) {
    const Complex g = ctx.gamma;
    auto a = [&](Complex x) { return std::sinh(x + g); };
    auto b = [&](Complex x) { return std::sinh(x); };
    const Complex c = std::sinh(g);
    const std::size_t n = XB.size();
    SnadCoefficients out;
    Complex pa = 1.0, pb = 1.0, t1 = 1.0, t2 = 1.0, t3 = 1.0, t4 = 1.0;
    for (Complex m : ctx.mu) {
        pa *= a(l0 - m);
        pb *= b(l0 - m);
    }
    for (std::size_t i = 0; i < n; ++i) {
        t1 *= a(YC[i] - l0) / b(YC[i] - l0);
        t2 *= a(XB[i] - l0) / b(XB[i] - l0);
        t3 *= a(l0 - YC[i]) / b(l0 - YC[i]);
        t4 *= a(l0 - XB[i]) / b(l0 - XB[i]);
    }
    out.j0 = pa * t1 - pa * t2;
    out.jt0 = pb * t3 - pb * t4;
    for (int side = 0; side < 2; ++side) {
        const SpectralSet& V = side == 0 ? XB : YC;
        const double alpha = side == 0 ? 1.0 : -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex k = alpha * c / b(V[i] - l0), kt = alpha * c / b(l0 - V[i]);
            for (Complex m : ctx.mu) {
                k *= a(V[i] - m);
                kt *= b(V[i] - m);
            }
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    k *= a(V[j] - V[i]) / b(V[j] - V[i]);
                    kt *= a(V[i] - V[j]) / b(V[i] - V[j]);
                }
            (side == 0 ? out.kb : out.kc).push_back(k);
            (side == 0 ? out.ktb : out.ktc).push_back(kt);
        }
    }
    return out;
}

struct FxPoint {
    Complex l0, theta;
    SpectralSet X;
};

FxPoint fx_point(const ModelContext& ctx, Sampler& s) {
    FxPoint p;
    p.X = s.distinct_points(std::size_t(ctx.L), ctx);
    p.l0 = s.distinct_points(1, ctx, p.X.values())[0];
    p.theta = s.theta(ctx, theta_shift_range(ctx.L));
    return p;
}

} // namespace

TEST(FxCoefficients, SingleSiteReadOff) {
    const auto ctx = make_ctx(1, false);
    const Complex l0{0.3, 0.1}, l1{-0.4, 0.2}, th{0.6, 0.15}, g = ctx.gamma, mu = ctx.mu[0];
    auto f = [&](Complex x) { return ctx.f(x); };
    const auto c = fx_coefficients(l0, {l1}, th, ctx);
    ASSERT_EQ(c.n.size(), 2u);
    EXPECT_LT(rel(c.m0, f(th) / f(th + g) * f(l0 - mu)), 1e-14);
    // coefficient of Z_theta({lambda_0}), i.e. lambda_1 removed
    const Complex n1 = -(f(th + g + l0 - l1) / f(th + 2.0 * g)) * (f(g) / f(l0 - l1 + g)) * f(l1 - mu + g) *
                       (f(l0 - l1 + g) / f(l0 - l1));
    EXPECT_LT(rel(c.n[1], n1), 1e-14);
}

TEST(FxCoefficients, VanishWithCrossingParameter) {
    ModelContext ctx = make_ctx(2, false);
    const SpectralSet X{{0.2, 0.1}, {-0.5, 0.3}};
    ctx.gamma = 1e-9;
    const auto c = fx_coefficients({0.35, -0.2}, X, {0.6, 0.1}, ctx);
    for (std::size_t i = 1; i < c.n.size(); ++i) EXPECT_LT(std::abs(c.n[i]), 1e-7) << i;
    // the lambda_0-removed term survives and cancels M_0
    EXPECT_LT(std::abs(c.n[0] + c.m0) / std::abs(c.m0), 1e-7);
}

TEST(FxCoefficients, MatchIndependentTranscription) {
    for (bool trig : {false, true}) {
        const auto ctx = make_ctx(3, trig);
        Sampler s = sampler_for("fx-transcription-" + regime_name(trig));
        const auto p = fx_point(ctx, s);
        const auto a = fx_coefficients(p.l0, p.X, p.theta, ctx);
        const auto b = fx_oracle(p.l0, p.X, p.theta, ctx);
        EXPECT_LT(rel(a.m0, b.m0), 1e-13);
        for (int i = 0; i <= 3; ++i) EXPECT_LT(rel(a.n[i], b.n[i]), 1e-13) << i;
    }
}

TEST(FxCoefficients, SingularDenominatorIsReported) {
    const auto ctx = make_ctx(2, false);
    const SpectralSet X{{0.2, 0.1}, {-0.5, 0.3}};
    try {
        fx_coefficients(X[0] - ctx.gamma, X, {0.6, 0.1}, ctx);
        FAIL() << "expected SingularCoefficient";
    } catch (const SingularCoefficient& e) {
        EXPECT_NE(std::string(e.what()).find("f(lambda_0 - lambda_i + gamma)"), std::string::npos);
    }
}

TEST(FxResidual, BruteForceBothRegimes) {
    for (bool trig : {false, true})
        for (int L = 1; L <= 4; ++L) {
            const auto ctx = make_ctx(L, trig);
            Sampler s = sampler_for("fx-" + regime_name(trig), std::uint64_t(L));
            for (int k = 0; k < 5; ++k) {
                const auto p = fx_point(ctx, s);
                EXPECT_LE(fx_residual(p.l0, p.X, p.theta, ctx, brute_force_partition(ctx)), 1e-9)
                    << regime_name(trig) << " L=" << L;
            }
        }
}

TEST(FxResidual, ScaleInvariance) {
    const auto ctx = make_ctx(2, false);
    Sampler s = sampler_for("fx-scale");
    const auto p = fx_point(ctx, s);
    const auto Z = brute_force_partition(ctx);
    const PartitionEvaluator Zs = [&](const SpectralSet& X, Complex th) { return 7.3 * Z(X, th); };
    EXPECT_LT(std::abs(fx_residual(p.l0, p.X, p.theta, ctx, Z) - fx_residual(p.l0, p.X, p.theta, ctx, Zs)), 1e-12);
}

TEST(FxResidual, DetectsAWrongSolution) {
    // Z multiplied by a non-symmetric factor no longer satisfies the equation
    const auto ctx = make_ctx(2, false);
    Sampler s = sampler_for("fx-teeth");
    const auto p = fx_point(ctx, s);
    const auto Z = brute_force_partition(ctx);
    const PartitionEvaluator bad = [&](const SpectralSet& X, Complex th) { return std::exp(X[0]) * Z(X, th); };
    EXPECT_GT(fx_residual(p.l0, p.X, p.theta, ctx, bad), 1e-3);
}

TEST(FxResidual, ContourSolutionSatisfiesTheEquation) {
    for (bool trig : {false, true})
        for (int L = 1; L <= 3; ++L) {
            const auto ctx = make_ctx(L, trig);
            Sampler s = sampler_for("fx-contour-" + regime_name(trig), std::uint64_t(L));
            const auto p = fx_point(ctx, s);
            const PartitionEvaluator Z = [&](const SpectralSet& X, Complex th) { return z_contour(X, th, ctx); };
            EXPECT_LE(fx_residual(p.l0, p.X, p.theta, ctx, Z), 1e-7);
        }
}

TEST(FxResidual, ProjectedRouteAgrees) {
    for (bool trig : {false, true})
        for (int L = 1; L <= 3; ++L) {
            const auto ctx = make_ctx(L, trig);
            Sampler s = sampler_for("fx-projected-" + regime_name(trig), std::uint64_t(L));
            const auto p = fx_point(ctx, s);
            EXPECT_LE(fx_projected_residual(p.l0, p.X, p.theta, ctx), 1e-9);
        }
}

TEST(SnadCoefficients, SinglePointReadOff) {
    const auto ctx = make_ctx(2, true);
    const Complex l0{0.3, 0.1}, lb{-0.4, 0.2}, lc{0.5, -0.25}, g = ctx.gamma;
    auto a = [&](Complex x) { return std::sinh(x + g); };
    auto b = [&](Complex x) { return std::sinh(x); };
    const auto c = snad_coefficients(l0, {lb}, {lc}, ctx);
    const Complex j0 = a(l0 - ctx.mu[0]) * a(l0 - ctx.mu[1]) * (a(lc - l0) / b(lc - l0) - a(lb - l0) / b(lb - l0));
    EXPECT_LT(rel(c.j0, j0), 1e-14);
}

TEST(SnadCoefficients, EqualSetsCancelTheDiagonalTerm) {
    const auto ctx = make_ctx(2, true);
    const SpectralSet V{{0.2, 0.1}, {-0.5, 0.3}};
    const auto c = snad_coefficients({0.4, -0.1}, V, V, ctx);
    EXPECT_EQ(c.j0, Complex(0.0, 0.0));
    EXPECT_EQ(c.jt0, Complex(0.0, 0.0));
}

TEST(SnadCoefficients, MatchIndependentTranscription) {
    const auto ctx = make_ctx(3, true);
    Sampler s = sampler_for("snad-transcription");
    const SpectralSet XB = s.distinct_points(2, ctx), YC = s.distinct_points(2, ctx, XB.values(), SetLabel::Y);
    auto avoid = XB.values();
    avoid.insert(avoid.end(), YC.begin(), YC.end());
    const Complex l0 = s.distinct_points(1, ctx, avoid)[0];
    const auto a = snad_coefficients(l0, XB, YC, ctx), b = snad_oracle(l0, XB, YC, ctx);
    EXPECT_LT(rel(a.j0, b.j0), 1e-13);
    EXPECT_LT(rel(a.jt0, b.jt0), 1e-13);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_LT(rel(a.kb[i], b.kb[i]), 1e-13);
        EXPECT_LT(rel(a.kc[i], b.kc[i]), 1e-13);
        EXPECT_LT(rel(a.ktb[i], b.ktb[i]), 1e-13);
        EXPECT_LT(rel(a.ktc[i], b.ktc[i]), 1e-13);
    }
}

TEST(SnadCoefficients, Errors) {
    EXPECT_THROW(snad_coefficients(0.1, {0.2}, {0.3}, make_ctx(1, false)), RegimeMismatch);
    EXPECT_THROW(snad_coefficients(0.1, {0.2}, {0.3, 0.4}, make_ctx(2, true)), SizeMismatch);
    EXPECT_THROW(snad_coefficients(0.2, {0.2}, {0.3}, make_ctx(2, true)), SingularCoefficient);
}

TEST(SnadResidual, BruteForce) {
    for (int L = 1; L <= 4; ++L)
        for (int n = 1; n <= std::min(L, 3); ++n) {
            const auto ctx = make_ctx(L, true);
            Sampler s = sampler_for("snad", std::uint64_t(10 * L + n));
            for (int k = 0; k < 3; ++k) {
                const SpectralSet XB = s.distinct_points(std::size_t(n), ctx);
                const SpectralSet YC = s.distinct_points(std::size_t(n), ctx, XB.values(), SetLabel::Y);
                auto avoid = XB.values();
                avoid.insert(avoid.end(), YC.begin(), YC.end());
                const Complex l0 = s.distinct_points(1, ctx, avoid)[0];
                const auto [ra, rd] = snad_residuals(l0, XB, YC, ctx, brute_force_scalar_product(ctx));
                EXPECT_LE(ra, 1e-9) << "n=" << n << " L=" << L;
                EXPECT_LE(rd, 1e-9) << "n=" << n << " L=" << L;
            }
        }
}

TEST(SnadResidual, Linearity) {
    const auto ctx = make_ctx(2, true);
    const SpectralSet XB{{0.2, 0.1}}, YC{{-0.5, 0.3}};
    const auto S = brute_force_scalar_product(ctx);
    const ScalarProductEvaluator S2 = [&](const SpectralSet& b, const SpectralSet& c) { return S(b, c) + S(b, c); };
    const auto r1 = snad_residuals({0.4, -0.1}, XB, YC, ctx, S), r2 = snad_residuals({0.4, -0.1}, XB, YC, ctx, S2);
    EXPECT_LT(std::abs(r1.first - r2.first), 1e-12);
    EXPECT_LT(std::abs(r1.second - r2.second), 1e-12);
}

TEST(Project, ReferenceValues) {
    const auto ctx = make_ctx(2, false);
    const BoundaryVectors bv(2);
    EXPECT_EQ(project(ChainOperator::identity(2), bv.ket0, bv.ket0), Complex(1.0, 0.0));
    const SpectralSet X{{0.2, 0.1}, {-0.5, 0.3}};
    const Complex th{0.6, 0.15};
    EXPECT_EQ(project(ordered_b_product(X, th, ctx), bv.ket0bar, bv.ket0), dwbc_partition(X, th, ctx));
    EXPECT_EQ(project(monodromy_blocks(X[0], th, ctx).B, bv.ket0, bv.ket0), Complex(0.0, 0.0));
}

TEST(Identities, ExchangeRelations) {
    Sampler s = sampler_for("identities");
    auto args = [&](const ModelContext& ctx, std::size_t nb, std::size_t nc) {
        IdentityArgs a;
        a.xb = s.distinct_points(nb, ctx);
        a.yc = s.distinct_points(nc, ctx, a.xb.values(), SetLabel::Y);
        auto avoid = a.xb.values();
        avoid.insert(avoid.end(), a.yc.begin(), a.yc.end());
        a.lambda0 = s.distinct_points(1, ctx, avoid)[0];
        a.theta = s.theta(ctx, theta_shift_range(ctx.L));
        return a;
    };
    const auto e2 = make_ctx(2, false);
    EXPECT_LE(verify_identity(IdentityKind::bb(), args(e2, 1, 0), e2), 1e-10);
    EXPECT_LE(verify_identity(IdentityKind::abn(2), args(e2, 2, 0), e2), 1e-9);
    const auto e3 = make_ctx(3, false);
    EXPECT_LE(verify_identity(IdentityKind::abn(3), args(e3, 3, 0), e3), 1e-9);
    const auto t3 = make_ctx(3, true);
    EXPECT_LE(verify_identity(IdentityKind::ab(), args(t3, 1, 0), t3), 1e-10);
    EXPECT_LE(verify_identity(IdentityKind::tay(2), args(t3, 2, 2), t3), 1e-9);
    EXPECT_LE(verify_identity(IdentityKind::tdy(2), args(t3, 2, 2), t3), 1e-9);
    const auto t2 = make_ctx(2, true);
    EXPECT_LE(verify_identity(IdentityKind::tay(1), args(t2, 1, 1), t2), 1e-9);
    EXPECT_LE(verify_identity(IdentityKind::tdy(2), args(t2, 2, 2), t2), 1e-9);
}

TEST(Identities, Errors) {
    const auto e2 = make_ctx(2, false);
    IdentityArgs a{{0.3, 0.1}, SpectralSet{{-0.2, 0.2}}, {}, {0.6, 0.1}};
    EXPECT_THROW(verify_identity(IdentityKind::ab(), a, e2), RegimeMismatch);
    EXPECT_THROW(verify_identity(IdentityKind::abn(2), a, e2), SizeMismatch);
    const auto t2 = make_ctx(2, true);
    a.lambda0 = a.xb[0];
    EXPECT_THROW(verify_identity(IdentityKind::ab(), a, t2), SingularCoefficient);
    EXPECT_THROW(verify_identity(IdentityKind::tay(1), a, t2), SizeMismatch);
}

TEST(IdentityKind, Names) {
    EXPECT_EQ(IdentityKind::ab().name(), "AB");
    EXPECT_EQ(IdentityKind::abn(3).name(), "ABn(3)");
    EXPECT_EQ(IdentityKind::tdy(2).name(), "TDY(2)");
}
