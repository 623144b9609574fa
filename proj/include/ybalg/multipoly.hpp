#pragma once

#include "ybalg/errors.hpp"
#include "ybalg/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ybalg {

/// Multivariate polynomial with complex coefficients and degree at most
/// `max_deg` in each variable. Coefficients are stored densely with the
/// exponent of variable 0 varying slowest.
class MultiPoly {
public:
    MultiPoly() = default;
    MultiPoly(int nvars, int max_deg) : nvars_(nvars), max_deg_(max_deg) {
        if (nvars < 1) throw IndexError("MultiPoly needs at least one variable");
        if (max_deg < 0) throw DegreeMismatch("negative degree bound");
        std::size_t n = 1;
        for (int k = 0; k < nvars; ++k) n *= std::size_t(max_deg + 1);
        coeffs_.assign(n, Complex{});
    }

    int nvars() const { return nvars_; }
    int max_deg() const { return max_deg_; }
    std::size_t size() const { return coeffs_.size(); }
    std::span<Complex> coeffs() { return coeffs_; }
    std::span<const Complex> coeffs() const { return coeffs_; }

    std::size_t flat_index(std::span<const int> exponents) const {
        if (static_cast<int>(exponents.size()) != nvars_) throw IndexError("exponent vector has wrong length");
        std::size_t idx = 0;
        for (int e : exponents) {
            if (e < 0 || e > max_deg_) throw IndexError("exponent " + std::to_string(e) + " outside [0, max_deg]");
            idx = idx * std::size_t(max_deg_ + 1) + std::size_t(e);
        }
        return idx;
    }

    std::vector<int> exponents(std::size_t flat) const {
        std::vector<int> e(nvars_);
        for (int k = nvars_ - 1; k >= 0; --k) {
            e[k] = static_cast<int>(flat % std::size_t(max_deg_ + 1));
            flat /= std::size_t(max_deg_ + 1);
        }
        return e;
    }

    Complex& operator[](std::span<const int> e) { return coeffs_[flat_index(e)]; }
    Complex operator[](std::span<const int> e) const { return coeffs_[flat_index(e)]; }

    /// Nested Horner evaluation.
    Complex evaluate(std::span<const Complex> z) const {
        if (static_cast<int>(z.size()) != nvars_)
            throw IndexError("evaluation point has " + std::to_string(z.size()) + " entries, expected " +
                             std::to_string(nvars_));
        return horner(z, 0, 0);
    }

    /// d^k/dz_var^k, keeping the same shape.
    MultiPoly derivative(int var, int k) const {
        if (var < 0 || var >= nvars_) throw IndexError("derivative variable out of range");
        MultiPoly out(nvars_, max_deg_);
        if (k > max_deg_) return out;
        for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
            if (coeffs_[idx] == Complex{}) continue;
            auto e = exponents(idx);
            if (e[var] < k) continue;
            double falling = 1.0;
            for (int t = 0; t < k; ++t) falling *= double(e[var] - t);
            e[var] -= k;
            out.coeffs_[out.flat_index(e)] += falling * coeffs_[idx];
        }
        return out;
    }

    /// Largest exponent of `var` carrying a coefficient above `threshold`.
    int degree_in(int var, double threshold = 0.0) const {
        int d = -1;
        for (std::size_t idx = 0; idx < coeffs_.size(); ++idx)
            if (std::abs(coeffs_[idx]) > threshold) d = std::max(d, exponents(idx)[var]);
        return d;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (auto c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    /// Copy with a smaller degree bound; coefficients beyond it are dropped.
    MultiPoly truncated(int new_max_deg) const {
        MultiPoly out(nvars_, new_max_deg);
        for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
            const auto e = exponents(idx);
            bool fits = true;
            for (int x : e) fits = fits && x <= new_max_deg;
            if (fits) out.coeffs_[out.flat_index(e)] = coeffs_[idx];
        }
        return out;
    }

private:
    Complex horner(std::span<const Complex> z, int var, std::size_t offset) const {
        const std::size_t stride = [&] {
            std::size_t s = 1;
            for (int k = var + 1; k < nvars_; ++k) s *= std::size_t(max_deg_ + 1);
            return s;
        }();
        Complex acc{0.0, 0.0};
        for (int e = max_deg_; e >= 0; --e) {
            const std::size_t at = offset + std::size_t(e) * stride;
            const Complex c = (var + 1 == nvars_) ? coeffs_[at] : horner(z, var + 1, at);
            acc = acc * z[var] + c;
        }
        return acc;
    }

    int nvars_ = 0;
    int max_deg_ = 0;
    std::vector<Complex> coeffs_;
};

} // namespace ybalg
