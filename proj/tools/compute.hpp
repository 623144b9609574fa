#pragma once

#include "runner.hpp"

namespace ybalg::cli {

struct ComputeArgs {
    std::string method = "both"; // bruteforce | contour | both
    std::vector<Complex> lambda;   // Z points; sampled when empty
    std::vector<Complex> lambda_b; // S_n points on B operators
    std::vector<Complex> lambda_c; // S_n points on C operators
    std::optional<Complex> theta;
    int n = -1; // S_n size; taken from the explicit lists when negative
};

namespace detail {

inline void validate_method(const std::string& m) {
    if (m != "bruteforce" && m != "contour" && m != "both")
        throw ConfigError("method: expected bruteforce, contour or both, got '" + m + "'");
}

inline void add_values(json& out, const std::string& method, const std::function<Complex()>& bf,
                       const std::function<Complex()>& ct) {
    std::optional<Complex> a, b;
    if (method != "contour") out["bruteforce"] = to_json(*(a = bf()));
    if (method != "bruteforce") out["contour"] = to_json(*(b = ct()));
    if (a && b) out["rel_diff"] = rel_diff(*a, *b);
}

} // namespace detail

/// Z_theta(X). With L = 1 the record also carries the closed form
/// f(gamma) f(theta + gamma - lambda + mu) / f(theta + gamma).
inline json compute_z(const RunConfig& cfg, const ComputeArgs& args) {
    detail::validate_method(args.method);
    const ModelContext ctx = cfg.model();
    Sampler s(sample_seed(cfg.seed, "compute-z", 0));
    SpectralSet X = args.lambda.empty() ? s.distinct_points(std::size_t(ctx.L), ctx) : SpectralSet(args.lambda);
    if (static_cast<int>(X.size()) != ctx.L)
        throw ConfigError("lambda: got " + std::to_string(X.size()) + " points but L = " + std::to_string(ctx.L));
    const Complex th = args.theta ? *args.theta : s.theta(ctx, theta_shift_range(ctx.L));

    json out{{"quantity", "Z"}, {"model", model_params(ctx)}, {"seed", cfg.seed}, {"lambda", to_json(X)},
             {"theta", to_json(th)}, {"method", args.method}};
    detail::add_values(out, args.method, [&] { return dwbc_partition(X, th, ctx); },
                       [&] { return z_contour(X, th, ctx); });
    if (ctx.L == 1) {
        const Complex g = ctx.gamma;
        out["closed_form"] = to_json(ctx.f(g) * ctx.theta_ratio(th + g - X[0] + ctx.mu[0], th + g));
    }
    return out;
}

/// S_n(XB | YC) in the trigonometric regime.
inline json compute_sn(const RunConfig& cfg, const ComputeArgs& args) {
    detail::validate_method(args.method);
    const ModelContext ctx = cfg.model();
    if (!ctx.trigonometric()) throw RegimeMismatch("S_n is computed in the trigonometric regime only (use --trig)");
    if (args.lambda_b.size() != args.lambda_c.size())
        throw ConfigError("lambda-b/lambda-c: lists must have equal length");
    const bool explicit_points = !args.lambda_b.empty();
    const int n = args.n >= 0 ? args.n : static_cast<int>(args.lambda_b.size());
    if (explicit_points && n != static_cast<int>(args.lambda_b.size()))
        throw ConfigError("n: does not match the number of explicit points");
    Sampler s(sample_seed(cfg.seed, "compute-sn", 0));
    SpectralSet XB, YC;
    if (explicit_points) {
        XB = SpectralSet(args.lambda_b);
        YC = SpectralSet(args.lambda_c, SetLabel::Y);
    } else {
        XB = s.distinct_points(std::size_t(n), ctx);
        YC = s.distinct_points(std::size_t(n), ctx, XB.values(), SetLabel::Y);
    }
    json out{{"quantity", "S"}, {"model", model_params(ctx)}, {"seed", cfg.seed}, {"n", n},
             {"xb", to_json(XB)}, {"yc", to_json(YC)}, {"method", args.method}};
    detail::add_values(out, args.method, [&] { return scalar_product_bf(XB, YC, ctx); },
                       [&] { return sn_contour(XB, YC, ctx); });
    return out;
}

} // namespace ybalg::cli
