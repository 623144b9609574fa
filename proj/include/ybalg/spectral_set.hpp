#pragma once

#include "ybalg/errors.hpp"
#include "ybalg/special_fn.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace ybalg {

enum class SetLabel { X, Y };

/// Ordered list of spectral parameters. X^{i,j}_k style subsets are built with
/// `prepend` and `remove`.
class SpectralSet {
public:
    SpectralSet() = default;
    SpectralSet(std::vector<Complex> values, SetLabel label = SetLabel::X) : values_(std::move(values)), label_(label) {}
    SpectralSet(std::initializer_list<Complex> values, SetLabel label = SetLabel::X) : values_(values), label_(label) {}

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    Complex operator[](std::size_t k) const { return values_.at(k); }
    const std::vector<Complex>& values() const { return values_; }
    SetLabel label() const { return label_; }
    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    SpectralSet remove(std::size_t k) const {
        if (k >= values_.size()) throw IndexError("remove index " + std::to_string(k) + " out of range");
        auto v = values_;
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(k));
        return {std::move(v), label_};
    }

    SpectralSet prepend(Complex lambda0) const {
        std::vector<Complex> v;
        v.reserve(values_.size() + 1);
        v.push_back(lambda0);
        v.insert(v.end(), values_.begin(), values_.end());
        return {std::move(v), label_};
    }

    /// {lambda0} u X \ {lambda_k}, with lambda0 in front.
    SpectralSet swap_in(std::size_t k, Complex lambda0) const { return remove(k).prepend(lambda0); }

    SpectralSet with(std::size_t k, Complex value) const {
        auto v = values_;
        v.at(k) = value;
        return {std::move(v), label_};
    }

private:
    std::vector<Complex> values_;
    SetLabel label_ = SetLabel::X;
};

} // namespace ybalg
