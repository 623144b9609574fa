#pragma once

// Brute-force lattice quantities: the domain-wall partition function, the
// off-shell scalar product of Bethe vectors and the highest/lowest weight
// actions of the monodromy blocks.

#include "ybalg/spectral_set.hpp"
#include "ybalg/yb_core.hpp"

#include <algorithm>
#include <cstdint>

namespace ybalg {

struct BoundaryVectors {
    Vector ket0;    // all spins up
    Vector ket0bar; // all spins down

    explicit BoundaryVectors(int L) : ket0(Vector::Zero(1 << L)), ket0bar(Vector::Zero(1 << L)) {
        ket0(0) = 1.0;
        ket0bar((1 << L) - 1) = 1.0;
    }
};

/// Y_theta(X) = prod_{j=1..|X|} B(lambda_j, theta + j gamma), any number of factors.
inline ChainOperator ordered_b_product(const SpectralSet& X, Complex theta, const ModelContext& ctx) {
    Matrix m = Matrix::Identity(ctx.dim(), ctx.dim());
    for (std::size_t j = 0; j < X.size(); ++j)
        m = m * monodromy_blocks(X[j], theta + double(j + 1) * ctx.gamma, ctx).B.matrix();
    return ChainOperator(std::move(m));
}

/// Z_theta(X) = <0bar| prod_j B(lambda_j, theta + j gamma) |0>.
inline Complex dwbc_partition(const SpectralSet& X, Complex theta, const ModelContext& ctx) {
    if (static_cast<int>(X.size()) != ctx.L)
        throw SizeMismatch("partition function needs |X| = L = " + std::to_string(ctx.L) + ", got " +
                           std::to_string(X.size()));
    const BoundaryVectors bv(ctx.L);
    return bv.ket0bar.transpose() * ordered_b_product(X, theta, ctx).matrix() * bv.ket0;
}

/// Independent oracle for Z_theta: sums the weights of all vertex
/// configurations of the L x L lattice with domain-wall boundaries, one R
/// entry per vertex. Limited to L <= 3.
inline Complex dwbc_partition_paths(const SpectralSet& X, Complex theta, const ModelContext& ctx) {
    const int L = ctx.L;
    if (static_cast<int>(X.size()) != L) throw SizeMismatch("path enumeration needs |X| = L");
    if (L > 3) throw SizeMismatch("path enumeration is limited to L <= 3");

    // vertical[j][i]: spin on the edge above row j at column i (row L is the bottom);
    // horizontal[j][i]: auxiliary spin left of column i in row j.
    const int n_h = L * (L - 1);
    const int n_v = L * (L - 1);
    const std::uint64_t total = std::uint64_t{1} << (n_h + n_v);
    Complex sum{0.0, 0.0};
    std::vector<std::vector<int>> vertical(L + 1, std::vector<int>(L)), horizontal(L, std::vector<int>(L + 1));
    for (std::uint64_t cfg = 0; cfg < total; ++cfg) {
        int bit = 0;
        auto next = [&] { return static_cast<int>((cfg >> bit++) & 1u); };
        for (int i = 0; i < L; ++i) {
            vertical[0][i] = 1; // <0bar|
            vertical[L][i] = 0; // |0>
        }
        for (int j = 1; j < L; ++j)
            for (int i = 0; i < L; ++i) vertical[j][i] = next();
        for (int j = 0; j < L; ++j) {
            horizontal[j][0] = 0; // B: auxiliary row index up
            horizontal[j][L] = 1; // auxiliary column index down
            for (int i = 1; i < L; ++i) horizontal[j][i] = next();
        }
        Complex w{1.0, 0.0};
        for (int j = 0; j < L && w != Complex{}; ++j) {
            const Complex row_theta = theta + double(j + 1) * ctx.gamma;
            for (int i = 0; i < L && w != Complex{}; ++i) {
                int later = 0;
                for (int k = i + 1; k < L; ++k) later += vertical[j][k] == 0 ? 1 : -1;
                const Matrix4 r = r_matrix(X[j] - ctx.mu[i], row_theta - ctx.gamma * double(later), ctx);
                const int out = 2 * horizontal[j][i] + vertical[j][i];
                const int in = 2 * horizontal[j][i + 1] + vertical[j + 1][i];
                w *= r(out, in);
            }
        }
        sum += w;
    }
    return sum;
}

/// S_n = <0| prod_{i=n..1} C(lambda^C_i) prod_{i=1..n} B(lambda^B_i) |0>, six-vertex regime only.
inline Complex scalar_product_bf(const SpectralSet& XB, const SpectralSet& YC, const ModelContext& ctx) {
    if (!ctx.trigonometric()) throw RegimeMismatch("scalar products are defined in the trigonometric regime only");
    if (XB.size() != YC.size())
        throw SizeMismatch("scalar product needs |XB| = |YC|, got " + std::to_string(XB.size()) + " and " +
                           std::to_string(YC.size()));
    const BoundaryVectors bv(ctx.L);
    Vector v = bv.ket0;
    for (std::size_t i = XB.size(); i-- > 0;) v = monodromy_blocks(XB[i], 0.0, ctx).B.matrix() * v;
    for (std::size_t i = 0; i < YC.size(); ++i) v = monodromy_blocks(YC[i], 0.0, ctx).C.matrix() * v;
    return bv.ket0.dot(v); // ket0 is real, so dot() is the plain transpose contraction
}

struct HwActionResult {
    double eigen = 0.0;        // max relative residual of the eigenvalue statements
    double annihilation = 0.0; // max |Op v|_max / |Op|_max for the annihilation statements
    double residual() const { return std::max(eigen, annihilation); }
};

/// Highest/lowest weight actions of A, B, C, D on |0>, |0bar> and their duals.
inline HwActionResult check_hw_actions(Complex lambda, Complex theta, const ModelContext& ctx) {
    const int L = ctx.L;
    const auto blocks = monodromy_blocks(lambda, theta, ctx);
    const BoundaryVectors bv(L);
    Complex prod_plus{1.0, 0.0}, prod_plain{1.0, 0.0};
    for (Complex m : ctx.mu) {
        prod_plus *= ctx.f(lambda - m + ctx.gamma);
        prod_plain *= ctx.f(lambda - m);
    }
    const Complex g = ctx.gamma;
    const Complex a_on_bar = ctx.theta_ratio(theta - g, theta + double(L - 1) * g) * prod_plain;
    const Complex d_on_0 = ctx.theta_ratio(theta + g, theta - double(L - 1) * g) * prod_plain;

    const Matrix& A = blocks.A.matrix();
    const Matrix& B = blocks.B.matrix();
    const Matrix& C = blocks.C.matrix();
    const Matrix& D = blocks.D.matrix();
    const Vector& k0 = bv.ket0;
    const Vector& kb = bv.ket0bar;

    HwActionResult out;
    auto eig = [&](const Vector& lhs, const Vector& rhs) {
        out.eigen = std::max(out.eigen, residual(Matrix(lhs), Matrix(rhs), ctx.tol.abs_floor));
    };
    auto zero = [&](const Matrix& op, const Vector& image) {
        out.annihilation = std::max(out.annihilation, max_abs(Matrix(image)) / std::max(max_abs(op), ctx.tol.abs_floor));
    };
    // kets
    eig(A * kb, a_on_bar * kb);
    eig(A * k0, prod_plus * k0);
    eig(D * k0, d_on_0 * k0);
    eig(D * kb, prod_plus * kb);
    zero(C, C * k0);
    zero(B, B * kb);
    // bras (plain transpose)
    eig(A.transpose() * kb, a_on_bar * kb);
    eig(A.transpose() * k0, prod_plus * k0);
    eig(D.transpose() * k0, d_on_0 * k0);
    eig(D.transpose() * kb, prod_plus * kb);
    zero(C, C.transpose() * kb);
    zero(B, B.transpose() * k0);
    return out;
}

} // namespace ybalg
