#pragma once

// Reproducible sampling of admissible spectral and dynamical arguments.
//
// The generator is std::mt19937_64, whose output sequence is fixed by the
// C++ standard. Doubles are formed from the top 53 bits so results do not
// depend on the standard library's distribution implementations.

#include "ybalg/model.hpp"
#include "ybalg/spectral_set.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace ybalg {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
    return h;
}

/// Seed for one sample of one check; independent of thread scheduling.
inline std::uint64_t sample_seed(std::uint64_t seed, std::string_view check, std::uint64_t index) {
    return splitmix64(splitmix64(seed ^ fnv1a(check)) + index);
}

class Sampler {
public:
    static constexpr double kReMax = 1.0;
    static constexpr double kImMax = 0.4;
    static constexpr double kSeparation = 1e-3;
    static constexpr int kMaxTries = 100000;

    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        const double u = double(rng_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    Complex point() { return {uniform(-kReMax, kReMax), uniform(-kImMax, kImMax)}; }

    /// n points with |f(x_i - x_j)| above the separation threshold, also kept
    /// away from `avoid` (compared through f as well).
    SpectralSet distinct_points(std::size_t n, const ModelContext& ctx, const std::vector<Complex>& avoid = {},
                                SetLabel label = SetLabel::X) {
        std::vector<Complex> out;
        int tries = 0;
        while (out.size() < n) {
            if (++tries > kMaxTries) throw Error("sampler could not find admissible points");
            const Complex z = point();
            bool ok = true;
            for (Complex w : out) ok = ok && std::abs(ctx.f(z - w)) > kSeparation;
            for (Complex w : avoid) ok = ok && std::abs(ctx.f(z - w)) > kSeparation;
            if (ok) out.push_back(z);
        }
        return {std::move(out), label};
    }

    /// A dynamical variable theta with |f(theta + k gamma)| above threshold
    /// for every |k| <= max_shift. In the trigonometric regime any point works.
    Complex theta(const ModelContext& ctx, int max_shift) {
        for (int tries = 0; tries < kMaxTries; ++tries) {
            const Complex th = point();
            if (ctx.trigonometric()) return th;
            bool ok = true;
            for (int k = -max_shift; k <= max_shift && ok; ++k)
                ok = std::abs(ctx.f(th + double(k) * ctx.gamma)) > kSeparation;
            if (ok) return th;
        }
        throw Error("sampler could not find an admissible theta");
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Dynamical shifts used by the checks stay within this range.
inline int theta_shift_range(int L) { return 2 * L + 4; }

} // namespace ybalg
