#pragma once

// Run configuration: JSON file plus command-line overrides.
//
// Schema (every key optional; README.md lists defaults):
//
//   {
//     "model": {
//       "L": 2,
//       "gamma": [0.41, 0.07],
//       "mu": [[-0.31, 0.06], [-0.08, -0.04]],
//       "regime": {"elliptic": {"nome": [0.2, 0.0]}}   or  "trig",
//       "rel_tol": 1e-9,
//       "abs_floor": 1e-300
//     },
//     "seed": 42,
//     "samples": 20,
//     "threads": 1,
//     "checks": ["dybe", "rll"],
//     "tolerances": {"dybe": 1e-9}
//   }

#include "ybalg/model.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ybalg::cli {

inline const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names{"dybe",           "rll",  "hw-actions",       "identities",
                                                "fx",             "snad", "z-contour-vs-bf",  "sn-contour-vs-bf",
                                                "fzt",            "pde-omega", "pde-leading", "dia-realization"};
    return names;
}

/// Checks that only make sense in the six-vertex regime.
inline bool trig_only(const std::string& check) {
    static const std::vector<std::string> names{"snad", "sn-contour-vs-bf", "fzt", "pde-omega", "pde-leading"};
    return std::find(names.begin(), names.end(), check) != names.end();
}

struct RunConfig {
    int L = 2;
    Complex gamma{0.41, 0.07};
    std::optional<std::vector<Complex>> mu; // default_mu(L) when absent
    bool trig = false;
    Complex nome{0.2, 0.0};
    double rel_tol = 1e-9;
    double abs_floor = 1e-300;
    std::uint64_t seed = 42;
    int samples = 20;
    int threads = 1;
    std::vector<std::string> checks; // empty: every check valid for the regime
    std::map<std::string, double> tolerances;

    /// Builds and validates the model, naming the offending field on failure.
    ModelContext model() const {
        ModelContext ctx;
        ctx.L = L;
        ctx.gamma = gamma;
        ctx.mu = mu ? *mu : default_mu(L);
        if (trig)
            ctx.regime = Trigonometric{};
        else
            ctx.regime = EllipticParams{nome};
        ctx.tol = {rel_tol, abs_floor};
        if (L < 1 || L > ModelContext::kMaxL) throw ConfigError("model.L: must be in [1, 10], got " + std::to_string(L));
        if (mu && static_cast<int>(mu->size()) != L)
            throw ConfigError("model.mu: has " + std::to_string(mu->size()) + " entries but L = " + std::to_string(L));
        try {
            ctx.validate();
        } catch (const NomeTooLarge& e) {
            throw ConfigError(std::string("model.regime.elliptic.nome: ") + e.what());
        } catch (const InvalidModel& e) {
            throw ConfigError(std::string("model.gamma: ") + e.what());
        }
        return ctx;
    }

    std::vector<std::string> resolved_checks() const {
        if (!checks.empty()) return checks;
        std::vector<std::string> out;
        for (const auto& c : known_checks())
            if (trig || !trig_only(c)) out.push_back(c);
        return out;
    }

    double tolerance_for(const std::string& check, double fallback) const {
        auto it = tolerances.find(check);
        return it == tolerances.end() ? fallback : it->second;
    }

    void validate() const {
        if (samples < 0) throw ConfigError("samples: must be non-negative");
        if (threads < 1) throw ConfigError("threads: must be at least 1");
        for (const auto& c : checks)
            if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
                throw ConfigError("checks: unknown check '" + c + "'");
        for (const auto& [name, tol] : tolerances) {
            if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end())
                throw ConfigError("tolerances: unknown check '" + name + "'");
            if (!(tol >= 0.0)) throw ConfigError("tolerances." + name + ": must be a non-negative number");
        }
        (void)model();
    }
};

namespace detail {

inline Complex complex_field(const nlohmann::json& j, const std::string& field) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError(field + ": expected a number or a [re, im] pair");
}

template <class T>
T typed_field(const nlohmann::json& j, const std::string& field) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(field + ": wrong type");
    }
}

inline void reject_unknown(const nlohmann::json& obj, const std::vector<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ConfigError((where.empty() ? "" : where + ".") + it.key() + ": unknown key");
}

inline int line_of(const std::string& text, std::size_t byte) {
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + std::min(byte, text.size()), '\n'));
}

} // namespace detail

inline RunConfig parse_config(const std::string& text) {
    using detail::complex_field;
    using detail::typed_field;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("line " + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError("top level: expected an object");
    detail::reject_unknown(j, {"model", "seed", "samples", "threads", "checks", "tolerances"}, "");

    RunConfig cfg;
    if (j.contains("model")) {
        const auto& m = j["model"];
        if (!m.is_object()) throw ConfigError("model: expected an object");
        detail::reject_unknown(m, {"L", "gamma", "mu", "regime", "rel_tol", "abs_floor"}, "model");
        if (m.contains("L")) cfg.L = typed_field<int>(m["L"], "model.L");
        if (m.contains("gamma")) cfg.gamma = complex_field(m["gamma"], "model.gamma");
        if (m.contains("mu")) {
            if (!m["mu"].is_array()) throw ConfigError("model.mu: expected a list");
            std::vector<Complex> mu;
            for (std::size_t k = 0; k < m["mu"].size(); ++k)
                mu.push_back(complex_field(m["mu"][k], "model.mu[" + std::to_string(k) + "]"));
            cfg.mu = std::move(mu);
        }
        if (m.contains("regime")) {
            const auto& r = m["regime"];
            if (r == "trig" || (r.is_object() && r.contains("trig"))) {
                cfg.trig = true;
            } else if (r.is_object() && r.contains("elliptic")) {
                const auto& e = r["elliptic"];
                if (e.is_object() && e.contains("nome")) cfg.nome = complex_field(e["nome"], "model.regime.elliptic.nome");
            } else {
                throw ConfigError("model.regime: expected \"trig\" or {\"elliptic\": {\"nome\": [re, im]}}");
            }
        }
        if (m.contains("rel_tol")) cfg.rel_tol = typed_field<double>(m["rel_tol"], "model.rel_tol");
        if (m.contains("abs_floor")) cfg.abs_floor = typed_field<double>(m["abs_floor"], "model.abs_floor");
    }
    if (j.contains("seed")) cfg.seed = typed_field<std::uint64_t>(j["seed"], "seed");
    if (j.contains("samples")) cfg.samples = typed_field<int>(j["samples"], "samples");
    if (j.contains("threads")) cfg.threads = typed_field<int>(j["threads"], "threads");
    if (j.contains("checks")) cfg.checks = typed_field<std::vector<std::string>>(j["checks"], "checks");
    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object()) throw ConfigError("tolerances: expected an object");
        for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it)
            cfg.tolerances[it.key()] = typed_field<double>(it.value(), "tolerances." + it.key());
    }
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

/// "RE,IM" or "RE".
inline Complex parse_complex(const std::string& s, const std::string& field) {
    std::stringstream ss(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(ss >> re)) throw ConfigError(field + ": cannot parse '" + s + "'");
    if (ss >> comma) {
        if (comma != ',' || !(ss >> im)) throw ConfigError(field + ": expected RE,IM, got '" + s + "'");
    }
    std::string rest;
    if (ss >> rest) throw ConfigError(field + ": trailing characters in '" + s + "'");
    return {re, im};
}

} // namespace ybalg::cli
