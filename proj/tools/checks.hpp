#pragma once

// Named verification checks. Each check maps (model, per-sample RNG, sample
// index) to a residual plus the inputs that produced it.

#include "run_config.hpp"

#include "ybalg/pde.hpp"
#include "ybalg/residue_int.hpp"
#include "ybalg/sampler.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace ybalg::cli {

using nlohmann::json;

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const SpectralSet& s) {
    json a = json::array();
    for (Complex z : s) a.push_back(to_json(z));
    return a;
}

struct SampleOutcome {
    double residual = 0.0;
    json params = json::object();
};

/// State shared by the samples of one check, built lazily and at most once.
struct CheckState {
    std::once_flag zbar_once;
    std::shared_ptr<const MultiPoly> zbar;

    const MultiPoly& zbar_for(const ModelContext& ctx) {
        std::call_once(zbar_once, [&] {
            if (ctx.L < 2 || ctx.L > 4) throw SizeMismatch("PDE checks need 2 <= L <= 4");
            zbar = std::make_shared<const MultiPoly>(interpolate_zbar(ctx).truncated(ctx.L - 1));
        });
        if (!zbar) throw Error("Zbar construction failed in an earlier sample");
        return *zbar;
    }
};

using CheckFn = std::function<SampleOutcome(const ModelContext&, Sampler&, std::uint64_t, CheckState&)>;

struct CheckSpec {
    CheckFn run;
    double default_tolerance;
};

namespace detail {

inline void require_trig(const ModelContext& ctx, const std::string& check) {
    if (!ctx.trigonometric()) throw RegimeMismatch(check + " runs in the trigonometric regime only (use --trig)");
}

inline double rel_diff(Complex a, Complex b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Sizes of the scalar-product samples cycle through 1..min(L, 3).
inline int cycle_n(const ModelContext& ctx, std::uint64_t index) {
    const int top = std::min(ctx.L, 3);
    return 1 + static_cast<int>(index % std::uint64_t(top));
}

inline SampleOutcome check_dybe(const ModelContext& ctx, Sampler& s, std::uint64_t, CheckState&) {
    const Complex l1 = s.point(), l2 = s.point(), l3 = s.point();
    const Complex th = s.theta(ctx, 4);
    return {verify_dybe(l1, l2, l3, th, ctx),
            {{"lambda", json::array({to_json(l1), to_json(l2), to_json(l3)})}, {"theta", to_json(th)}}};
}

inline SampleOutcome check_rll(const ModelContext& ctx, Sampler& s, std::uint64_t, CheckState&) {
    const Complex l1 = s.point(), l2 = s.point();
    const Complex th = s.theta(ctx, theta_shift_range(ctx.L));
    return {verify_rll(l1, l2, th, ctx), {{"lambda", json::array({to_json(l1), to_json(l2)})}, {"theta", to_json(th)}}};
}

inline SampleOutcome check_hw(const ModelContext& ctx, Sampler& s, std::uint64_t, CheckState&) {
    const Complex l = s.point();
    const Complex th = s.theta(ctx, theta_shift_range(ctx.L));
    const auto r = check_hw_actions(l, th, ctx);
    return {r.residual(),
            {{"lambda", to_json(l)}, {"theta", to_json(th)}, {"eigen", r.eigen}, {"annihilation", r.annihilation}}};
}

inline SampleOutcome check_identities(const ModelContext& ctx, Sampler& s, std::uint64_t index, CheckState&) {
    // the elliptic regime only supports the dynamical BB and ABn relations
    std::vector<IdentityKind> kinds{IdentityKind::bb(), IdentityKind::abn(ctx.L)};
    if (ctx.trigonometric())
        kinds = {IdentityKind::ab(), IdentityKind::bb(), IdentityKind::abn(ctx.L), IdentityKind::tay(2),
                 IdentityKind::tdy(2)};
    const IdentityKind kind = kinds[index % kinds.size()];
    const std::size_t nb = (kind.tag == IdentityTag::AB || kind.tag == IdentityTag::BB) ? 1 : std::size_t(kind.n);
    const std::size_t nc = (kind.tag == IdentityTag::TAY || kind.tag == IdentityTag::TDY) ? nb : 0;
    IdentityArgs args;
    args.xb = s.distinct_points(nb, ctx);
    args.yc = s.distinct_points(nc, ctx, args.xb.values(), SetLabel::Y);
    auto avoid = args.xb.values();
    avoid.insert(avoid.end(), args.yc.begin(), args.yc.end());
    args.lambda0 = s.distinct_points(1, ctx, avoid)[0];
    args.theta = s.theta(ctx, theta_shift_range(ctx.L));
    return {verify_identity(kind, args, ctx),
            {{"identity", kind.name()},
             {"lambda0", to_json(args.lambda0)},
             {"xb", to_json(args.xb)},
             {"yc", to_json(args.yc)},
             {"theta", to_json(args.theta)}}};
}

inline SampleOutcome check_fx(const ModelContext& ctx, Sampler& s, std::uint64_t, CheckState&) {
    const SpectralSet X = s.distinct_points(std::size_t(ctx.L), ctx);
    const Complex l0 = s.distinct_points(1, ctx, X.values())[0];
    const Complex th = s.theta(ctx, theta_shift_range(ctx.L));
    const double direct = fx_residual(l0, X, th, ctx, brute_force_partition(ctx));
    const double projected = fx_projected_residual(l0, X, th, ctx);
    return {std::max(direct, projected),
            {{"lambda0", to_json(l0)},
             {"lambda", to_json(X)},
             {"theta", to_json(th)},
             {"direct", direct},
             {"projected", projected}}};
}

inline SampleOutcome check_snad(const ModelContext& ctx, Sampler& s, std::uint64_t index, CheckState&) {
    require_trig(ctx, "snad");
    const int n = cycle_n(ctx, index);
    const SpectralSet XB = s.distinct_points(std::size_t(n), ctx);
    const SpectralSet YC = s.distinct_points(std::size_t(n), ctx, XB.values(), SetLabel::Y);
    auto avoid = XB.values();
    avoid.insert(avoid.end(), YC.begin(), YC.end());
    const Complex l0 = s.distinct_points(1, ctx, avoid)[0];
    const auto [ra, rd] = snad_residuals(l0, XB, YC, ctx, brute_force_scalar_product(ctx));
    return {std::max(ra, rd),
            {{"n", n}, {"lambda0", to_json(l0)}, {"xb", to_json(XB)}, {"yc", to_json(YC)}, {"a_type", ra}, {"d_type", rd}}};
}

inline SampleOutcome check_z_contour(const ModelContext& ctx, Sampler& s, std::uint64_t, CheckState&) {
    const SpectralSet X = s.distinct_points(std::size_t(ctx.L), ctx);
    const Complex th = s.theta(ctx, theta_shift_range(ctx.L));
    const Complex bf = dwbc_partition(X, th, ctx);
    const Complex ct = z_contour(X, th, ctx);
    return {rel_diff(bf, ct),
            {{"lambda", to_json(X)}, {"theta", to_json(th)}, {"bruteforce", to_json(bf)}, {"contour", to_json(ct)}}};
}

inline SampleOutcome check_sn_contour(const ModelContext& ctx, Sampler& s, std::uint64_t index, CheckState&) {
    require_trig(ctx, "sn-contour-vs-bf");
    const int n = cycle_n(ctx, index);
    const SpectralSet XB = s.distinct_points(std::size_t(n), ctx);
    const SpectralSet YC = s.distinct_points(std::size_t(n), ctx, XB.values(), SetLabel::Y);
    const Complex bf = scalar_product_bf(XB, YC, ctx);
    const Complex ct = sn_contour(XB, YC, ctx);
    return {rel_diff(bf, ct),
            {{"n", n}, {"xb", to_json(XB)}, {"yc", to_json(YC)}, {"bruteforce", to_json(bf)}, {"contour", to_json(ct)}}};
}

inline SampleOutcome check_fzt(const ModelContext& ctx, Sampler& s, std::uint64_t, CheckState&) {
    require_trig(ctx, "fzt");
    const SpectralSet X = s.distinct_points(std::size_t(ctx.L), ctx);
    const Complex l0 = s.distinct_points(1, ctx, X.values())[0];
    return {fzt_residual(l0, X, ctx, brute_force_partition(ctx)), {{"lambda0", to_json(l0)}, {"lambda", to_json(X)}}};
}

inline SampleOutcome check_pde_omega(const ModelContext& ctx, Sampler& s, std::uint64_t, CheckState& state) {
    require_trig(ctx, "pde-omega");
    const MultiPoly& zbar = state.zbar_for(ctx);
    const SpectralSet X = s.distinct_points(std::size_t(ctx.L), ctx);
    const auto om = omega_actions(zbar, PdeVars::from(X, ctx), ctx);
    json coeffs = json::array();
    for (Complex c : om.coeffs) coeffs.push_back(to_json(c));
    return {std::max(om.null_residual(), om.heldout),
            {{"lambda", to_json(X)}, {"omega", coeffs}, {"term_scale", om.term_scale}, {"heldout", om.heldout}}};
}

inline SampleOutcome check_pde_leading(const ModelContext& ctx, Sampler& s, std::uint64_t, CheckState& state) {
    require_trig(ctx, "pde-leading");
    const MultiPoly& zbar = state.zbar_for(ctx);
    const SpectralSet X = s.distinct_points(std::size_t(ctx.L), ctx);
    const PdeVars v = PdeVars::from(X, ctx);
    const auto null_part = omega_leading_terms(zbar, v, ctx);
    const double null_res = std::abs(null_part.value) / std::max(null_part.term_scale, 1e-300);
    // on Zbar both sides vanish, so the closed form is compared with the
    // extraction on a random polynomial of the same degree
    MultiPoly p(ctx.L, ctx.L - 1);
    for (auto& c : p.coeffs()) c = s.point();
    const Complex closed = omega_leading_apply(p, v, ctx);
    const Complex extracted = omega_actions(p, v, ctx).coeffs.back();
    const double agree = rel_diff(closed, extracted);
    return {std::max(null_res, agree),
            {{"lambda", to_json(X)},
             {"null_residual", null_res},
             {"closed_form", to_json(closed)},
             {"extracted", to_json(extracted)}}};
}

inline SampleOutcome check_dia(const ModelContext&, Sampler& s, std::uint64_t, CheckState&) {
    const int nvars = 1 + static_cast<int>(s.engine()() % 4);
    const int deg = static_cast<int>(s.engine()() % 9);
    MultiPoly p(nvars, deg);
    for (auto& c : p.coeffs()) c = s.point();
    std::vector<Complex> z;
    for (int k = 0; k <= nvars; ++k) z.push_back(s.point());
    const int i = static_cast<int>(s.engine()() % std::uint64_t(nvars));
    const Complex realized = dia_realized(p, i, z[nvars], z);
    const auto literal = dia_apply([&p](std::span<const Complex> w) { return p.evaluate(w.first(p.nvars())); },
                                   std::size_t(nvars), std::size_t(i), std::size_t(nvars));
    const Complex direct = literal(z);
    json pt = json::array();
    for (Complex c : z) pt.push_back(to_json(c));
    return {rel_diff(realized, direct),
            {{"nvars", nvars}, {"degree", deg}, {"i", i}, {"point", pt}, {"realized", to_json(realized)},
             {"substituted", to_json(direct)}}};
}

} // namespace detail

inline const std::map<std::string, CheckSpec>& check_registry() {
    static const std::map<std::string, CheckSpec> reg{
        {"dybe", {detail::check_dybe, 1e-9}},
        {"rll", {detail::check_rll, 1e-9}},
        {"hw-actions", {detail::check_hw, 1e-9}},
        {"identities", {detail::check_identities, 1e-9}},
        {"fx", {detail::check_fx, 1e-9}},
        {"snad", {detail::check_snad, 1e-9}},
        {"z-contour-vs-bf", {detail::check_z_contour, 1e-8}},
        {"sn-contour-vs-bf", {detail::check_sn_contour, 1e-6}},
        {"fzt", {detail::check_fzt, 1e-9}},
        {"pde-omega", {detail::check_pde_omega, 1e-7}},
        {"pde-leading", {detail::check_pde_leading, 1e-7}},
        {"dia-realization", {detail::check_dia, 1e-11}},
    };
    return reg;
}

} // namespace ybalg::cli
