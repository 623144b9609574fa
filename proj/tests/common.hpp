#pragma once

#include "ybalg/sampler.hpp"

#include <string>

namespace ybalg::testing {

inline ModelContext make_ctx(int L, bool trig, Complex gamma = {0.41, 0.07}) {
    ModelContext ctx;
    ctx.L = L;
    ctx.gamma = gamma;
    ctx.mu = default_mu(L);
    if (trig) ctx.regime = Trigonometric{};
    ctx.validate();
    return ctx;
}

inline std::string regime_name(bool trig) { return trig ? "trig" : "elliptic"; }

/// Per-test deterministic sampler.
inline Sampler sampler_for(const std::string& name, std::uint64_t index = 0) {
    return Sampler(sample_seed(20261018, name, index));
}

} // namespace ybalg::testing
