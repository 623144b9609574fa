#pragma once

#include "ybalg/errors.hpp"
#include "ybalg/special_fn.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace ybalg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Relative residual policy shared by every check.
struct TolerancePolicy {
    double rel_tol = 1e-9;
    double abs_floor = 1e-300;
};

/// Denominators below this magnitude are treated as poles.
inline constexpr double kPoleFloor = 1e-12;

/// rho(A, B) = |A - B|_max / max(|A|_max, |B|_max, floor)
inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double residual(const Matrix& lhs, const Matrix& rhs, double abs_floor = 1e-300) {
    const double scale = std::max({max_abs(lhs), max_abs(rhs), abs_floor});
    return max_abs(lhs - rhs) / scale;
}

inline double residual(Complex lhs, Complex rhs, double abs_floor = 1e-300) {
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), abs_floor});
}

/// Dense operator on the 2^L dimensional chain space.
class ChainOperator {
public:
    ChainOperator() = default;
    explicit ChainOperator(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw SizeMismatch("chain operator must be square");
        if (!m_.allFinite()) throw Error("chain operator has non-finite entries");
    }

    static ChainOperator identity(int L) { return ChainOperator(Matrix::Identity(1 << L, 1 << L)); }

    Eigen::Index dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

    friend ChainOperator operator*(const ChainOperator& a, const ChainOperator& b) {
        same_dim(a, b);
        return ChainOperator(a.m_ * b.m_);
    }
    friend ChainOperator operator+(const ChainOperator& a, const ChainOperator& b) {
        same_dim(a, b);
        return ChainOperator(a.m_ + b.m_);
    }
    friend ChainOperator operator-(const ChainOperator& a, const ChainOperator& b) {
        same_dim(a, b);
        return ChainOperator(a.m_ - b.m_);
    }
    friend ChainOperator operator*(Complex s, const ChainOperator& a) { return ChainOperator(s * a.m_); }

private:
    static void same_dim(const ChainOperator& a, const ChainOperator& b) {
        if (a.dim() != b.dim())
            throw SizeMismatch("chain operators of dimension " + std::to_string(a.dim()) + " and " +
                               std::to_string(b.dim()));
    }

    Matrix m_;
};

inline double residual(const ChainOperator& a, const ChainOperator& b, double abs_floor = 1e-300) {
    return residual(a.matrix(), b.matrix(), abs_floor);
}

/// The single source of model parameters: chain length, crossing parameter,
/// inhomogeneities and weight regime.
struct ModelContext {
    int L = 2;
    Complex gamma{0.41, 0.07};
    std::vector<Complex> mu;
    Regime regime = EllipticParams{};
    TolerancePolicy tol;

    static constexpr int kMaxL = 10;

    ModelContext() = default;
    ModelContext(int length, Complex crossing, std::vector<Complex> inhomogeneities, Regime r,
                 TolerancePolicy t = {})
        : L(length), gamma(crossing), mu(std::move(inhomogeneities)), regime(r), tol(t) {
        validate();
    }

    /// Rejects malformed models. `allow_degenerate` admits gamma = 0.
    void validate(bool allow_degenerate = false) const {
        if (L < 1 || L > kMaxL) throw InvalidModel("chain length L must be in [1, 10], got " + std::to_string(L));
        if (static_cast<int>(mu.size()) != L)
            throw InvalidModel("mu has " + std::to_string(mu.size()) + " entries, expected L = " + std::to_string(L));
        if (auto* e = std::get_if<EllipticParams>(&regime)) e->validate();
        if (!allow_degenerate && std::abs(f(gamma)) < kPoleFloor)
            throw InvalidModel("f(gamma) vanishes; weights c are identically zero");
    }

    bool trigonometric() const { return is_trigonometric(regime); }
    Complex f(Complex x) const { return f_weight(x, regime); }
    Complex f_deriv0() const { return f_weight_deriv0(regime); }
    int dim() const { return 1 << L; }

    /// f(num)/f(den) for arguments that carry the dynamical variable theta.
    /// In the trigonometric regime theta -> infinity and the ratio is 1.
    Complex theta_ratio(Complex num, Complex den) const {
        if (trigonometric()) return {1.0, 0.0};
        const Complex d = f(den);
        if (std::abs(d) < kPoleFloor)
            throw DynamicalPole("f vanishes at dynamical argument " + std::to_string(den.real()) + "+" +
                                std::to_string(den.imag()) + "i");
        return f(num) / d;
    }
};

/// Default inhomogeneities used when only L is given.
inline std::vector<Complex> default_mu(int L) {
    std::vector<Complex> mu;
    for (int j = 0; j < L; ++j) mu.emplace_back(0.23 * j - 0.31, 0.06 * ((j % 2) ? -1.0 : 1.0) + 0.02 * j);
    return mu;
}

} // namespace ybalg
