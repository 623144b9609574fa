#include "common.hpp"

#include "ybalg/lattice_qty.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace ybalg;
using namespace ybalg::testing;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

// every ordering of the points of X
template <class Visit>
void for_each_ordering(const SpectralSet& X, Visit&& visit) {
    std::vector<std::size_t> idx(X.size());
    std::iota(idx.begin(), idx.end(), 0);
    do {
        std::vector<Complex> v;
        for (auto k : idx) v.push_back(X[k]);
        visit(SpectralSet(v, X.label()));
    } while (std::next_permutation(idx.begin(), idx.end()));
}

} // namespace

TEST(SpectralSet, RemovePrependSwap) {
    const SpectralSet X{{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
    EXPECT_EQ(X.remove(1).values(), (std::vector<Complex>{1.0, 3.0}));
    EXPECT_EQ(X.prepend(0.0).values(), (std::vector<Complex>{0.0, 1.0, 2.0, 3.0}));
    EXPECT_EQ(X.swap_in(2, 9.0).values(), (std::vector<Complex>{9.0, 1.0, 2.0}));
    EXPECT_THROW(X.remove(3), IndexError);
}

TEST(BoundaryVectors, Orthonormal) {
    for (int L = 1; L <= 4; ++L) {
        const BoundaryVectors bv(L);
        EXPECT_EQ(bv.ket0.dot(bv.ket0), Complex(1.0, 0.0));
        EXPECT_EQ(bv.ket0bar.dot(bv.ket0bar), Complex(1.0, 0.0));
        EXPECT_EQ(bv.ket0bar.dot(bv.ket0), Complex(0.0, 0.0));
    }
}

TEST(Partition, SingleSiteClosedForm) {
    for (bool trig : {false, true}) {
        const auto ctx = make_ctx(1, trig);
        Sampler s = sampler_for("z-l1-" + regime_name(trig));
        for (int k = 0; k < 10; ++k) {
            const Complex l = s.point(), th = s.theta(ctx, 2), g = ctx.gamma, mu = ctx.mu[0];
            const Complex expect = ctx.f(g) * ctx.theta_ratio(th + g - l + mu, th + g);
            EXPECT_LT(rel(dwbc_partition({l}, th, ctx), expect), 1e-14);
        }
    }
}

TEST(Partition, SizeMismatch) {
    const auto ctx = make_ctx(2, false);
    EXPECT_THROW(dwbc_partition({{0.1, 0.0}}, 0.3, ctx), SizeMismatch);
}

TEST(Partition, PermutationInvariance) {
    for (bool trig : {false, true})
        for (int L = 2; L <= 4; ++L) {
            const auto ctx = make_ctx(L, trig);
            Sampler s = sampler_for("z-sym-" + regime_name(trig), std::uint64_t(L));
            const SpectralSet X = s.distinct_points(std::size_t(L), ctx);
            const Complex th = s.theta(ctx, theta_shift_range(L));
            const Complex z0 = dwbc_partition(X, th, ctx);
            for_each_ordering(X, [&](const SpectralSet& Y) { EXPECT_LT(rel(dwbc_partition(Y, th, ctx), z0), 1e-10); });
        }
}

TEST(Partition, WrongNumberOfLoweringOperatorsGivesZero) {
    for (int L = 1; L <= 3; ++L) {
        const auto ctx = make_ctx(L, false);
        const BoundaryVectors bv(L);
        Sampler s = sampler_for("z-count", std::uint64_t(L));
        const Complex th = s.theta(ctx, theta_shift_range(L));
        for (std::size_t m : {std::size_t(L - 1), std::size_t(L + 1)}) {
            const Matrix Y = ordered_b_product(s.distinct_points(m, ctx), th, ctx).matrix();
            const Complex z = bv.ket0bar.transpose() * Y * bv.ket0;
            EXPECT_LT(std::abs(z), 1e-14 * std::max(1.0, max_abs(Y)));
        }
    }
}

TEST(Partition, AgreesWithVertexConfigurationSum) {
    for (bool trig : {false, true})
        for (int L = 1; L <= 3; ++L) {
            const auto ctx = make_ctx(L, trig);
            Sampler s = sampler_for("z-paths-" + regime_name(trig), std::uint64_t(L));
            for (int k = 0; k < 5; ++k) {
                const SpectralSet X = s.distinct_points(std::size_t(L), ctx);
                const Complex th = s.theta(ctx, theta_shift_range(L));
                EXPECT_LT(rel(dwbc_partition_paths(X, th, ctx), dwbc_partition(X, th, ctx)), 1e-12)
                    << regime_name(trig) << " L=" << L;
            }
        }
    EXPECT_THROW(dwbc_partition_paths({0.1, 0.2, 0.3, 0.4}, 0.3, make_ctx(4, true)), SizeMismatch);
}

TEST(ScalarProduct, EmptyProductIsOne) {
    const auto ctx = make_ctx(2, true);
    EXPECT_EQ(scalar_product_bf({}, {}, ctx), Complex(1.0, 0.0));
}

TEST(ScalarProduct, SingleSiteContraction) {
    // <0| C(lc) B(lb) |0> with L = 1: b-type weights only through c(lb - mu) c(lc - mu)
    const auto ctx = make_ctx(1, true);
    const Complex lb{0.3, 0.1}, lc{-0.2, 0.25};
    const Complex c = std::sinh(ctx.gamma);
    EXPECT_LT(rel(scalar_product_bf({lb}, {lc}, ctx), c * c), 1e-14);
}

TEST(ScalarProduct, DoubleSymmetry) {
    for (int L = 2; L <= 3; ++L) {
        const auto ctx = make_ctx(L, true);
        Sampler s = sampler_for("sn-sym", std::uint64_t(L));
        for (std::size_t n = 2; n <= std::size_t(L); ++n) {
            const SpectralSet XB = s.distinct_points(n, ctx);
            const SpectralSet YC = s.distinct_points(n, ctx, XB.values(), SetLabel::Y);
            const Complex s0 = scalar_product_bf(XB, YC, ctx);
            for_each_ordering(XB, [&](const SpectralSet& B) {
                for_each_ordering(YC, [&](const SpectralSet& C) { EXPECT_LT(rel(scalar_product_bf(B, C, ctx), s0), 1e-10); });
            });
        }
    }
}

TEST(ScalarProduct, MoreOperatorsThanSitesGivesZero) {
    const auto ctx = make_ctx(2, true);
    Sampler s = sampler_for("sn-overfull");
    const SpectralSet XB = s.distinct_points(3, ctx), YC = s.distinct_points(3, ctx, XB.values(), SetLabel::Y);
    EXPECT_EQ(scalar_product_bf(XB, YC, ctx), Complex(0.0, 0.0));
}

TEST(ScalarProduct, Errors) {
    EXPECT_THROW(scalar_product_bf({0.1}, {0.2}, make_ctx(1, false)), RegimeMismatch);
    EXPECT_THROW(scalar_product_bf({0.1}, {0.2, 0.3}, make_ctx(2, true)), SizeMismatch);
}

TEST(HighestWeight, AllStatementsBothRegimes) {
    for (bool trig : {false, true})
        for (int L = 1; L <= 3; ++L) {
            const auto ctx = make_ctx(L, trig);
            Sampler s = sampler_for("hw-" + regime_name(trig), std::uint64_t(L));
            for (int k = 0; k < 10; ++k) {
                const auto r = check_hw_actions(s.point(), s.theta(ctx, theta_shift_range(L)), ctx);
                EXPECT_LE(r.eigen, 1e-10);
                EXPECT_LE(r.annihilation, 1e-14);
            }
        }
}

TEST(HighestWeight, IndividualStatements) {
    // A|0> at L = 2 elliptic, D|0> at L = 3, C|0> = 0
    const auto ctx2 = make_ctx(2, false);
    const Complex l{0.35, -0.12}, th{0.55, 0.2};
    const auto m2 = monodromy_blocks(l, th, ctx2);
    const BoundaryVectors bv2(2);
    Complex pa{1.0, 0.0};
    for (Complex mu : ctx2.mu) pa *= ctx2.f(l - mu + ctx2.gamma);
    EXPECT_LE(residual(Matrix(m2.A.matrix() * bv2.ket0), Matrix(pa * bv2.ket0)), 1e-10);
    EXPECT_EQ(max_abs(Matrix(m2.C.matrix() * bv2.ket0)), 0.0);

    const auto ctx3 = make_ctx(3, false);
    const auto m3 = monodromy_blocks(l, th, ctx3);
    const BoundaryVectors bv3(3);
    Complex pd = ctx3.f(th + ctx3.gamma) / ctx3.f(th - 2.0 * ctx3.gamma);
    for (Complex mu : ctx3.mu) pd *= ctx3.f(l - mu);
    EXPECT_LE(residual(Matrix(m3.D.matrix() * bv3.ket0), Matrix(pd * bv3.ket0)), 1e-10);
}
