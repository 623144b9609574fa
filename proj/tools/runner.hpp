#pragma once

#include "checks.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ostream>
#include <thread>

namespace ybalg::cli {

struct Record {
    std::string check;
    std::uint64_t seed = 0;
    std::uint64_t sample_seed = 0;
    std::uint64_t sample_index = 0;
    json params;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::optional<std::string> error;
    double wall_time_ms = 0.0;

    json to_json() const {
        json j{{"check", check},
               {"seed", seed},
               {"sample_seed", sample_seed},
               {"sample_index", sample_index},
               {"params", params},
               {"residual", std::isfinite(residual) ? json(residual) : json(nullptr)},
               {"tolerance", tolerance},
               {"pass", pass}};
        if (error) j["error"] = *error;
        j["wall_time_ms"] = wall_time_ms;
        return j;
    }
};

/// One JSON object per line; each write is complete before the next starts.
class ReportSink {
public:
    explicit ReportSink(std::ostream& out) : out_(out) {}

    void write(const Record& r) {
        const std::string line = r.to_json().dump();
        std::lock_guard lock(mu_);
        out_ << line << '\n';
        out_.flush();
    }

private:
    std::ostream& out_;
    std::mutex mu_;
};

inline json model_params(const ModelContext& ctx) {
    json mu = json::array();
    for (Complex m : ctx.mu) mu.push_back(to_json(m));
    json j{{"L", ctx.L}, {"gamma", to_json(ctx.gamma)}, {"mu", mu}};
    if (auto* e = std::get_if<EllipticParams>(&ctx.regime))
        j["regime"] = {{"elliptic", {{"nome", to_json(e->nome)}}}};
    else
        j["regime"] = "trig";
    return j;
}

inline Record run_sample(const std::string& check, const CheckSpec& spec, const ModelContext& ctx, const RunConfig& cfg,
                         std::uint64_t index, CheckState& state) {
    Record r;
    r.check = check;
    r.seed = cfg.seed;
    r.sample_index = index;
    r.sample_seed = sample_seed(cfg.seed, check, index);
    r.tolerance = cfg.tolerance_for(check, spec.default_tolerance);
    r.params = {{"model", model_params(ctx)}};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Sampler sampler(r.sample_seed);
        auto out = spec.run(ctx, sampler, index, state);
        r.residual = out.residual;
        for (auto it = out.params.begin(); it != out.params.end(); ++it) r.params[it.key()] = it.value();
        r.pass = std::isfinite(r.residual) && r.residual <= r.tolerance;
    } catch (const std::exception& e) {
        r.residual = std::nan("");
        r.pass = false;
        r.error = e.what();
    }
    r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// Runs every configured check and streams records to `out`. Returns the exit
/// code: 0 when all records pass, 1 otherwise. Throws ConfigError before any
/// computation when the configuration is invalid.
inline int run_checks(const RunConfig& cfg, std::ostream& out) {
    cfg.validate();
    const ModelContext ctx = cfg.model();
    const auto checks = cfg.resolved_checks();

    struct Job {
        const std::string* check;
        const CheckSpec* spec;
        CheckState* state;
        std::uint64_t index;
    };
    std::vector<std::unique_ptr<CheckState>> states;
    std::vector<Job> jobs;
    for (const auto& name : checks) {
        states.push_back(std::make_unique<CheckState>());
        const auto& spec = check_registry().at(name);
        for (int k = 0; k < cfg.samples; ++k) jobs.push_back({&name, &spec, states.back().get(), std::uint64_t(k)});
    }

    ReportSink sink(out);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> all_pass{true};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            const Record r = run_sample(*jobs[j].check, *jobs[j].spec, ctx, cfg, jobs[j].index, *jobs[j].state);
            if (!r.pass) all_pass = false;
            sink.write(r);
        }
    };
    const int nthreads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(jobs.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return all_pass ? 0 : 1;
}

} // namespace ybalg::cli
