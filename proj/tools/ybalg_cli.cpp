// ybalg command-line harness.
//
//   ybalg run [--config PATH] [--checks a,b] [--samples N] [--seed U64] [--threads N] ...
//   ybalg compute z  [--method bruteforce|contour|both] [--lambda RE,IM ...] [--theta RE,IM]
//   ybalg compute sn [--n N] [--lambda-b RE,IM ...] [--lambda-c RE,IM ...]
//
// Exit codes: 0 success, 1 failed check or computation error, 2 configuration error.

#include "compute.hpp"
#include "runner.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace ybalg;
using namespace ybalg::cli;

struct ModelFlags {
    std::string config;
    std::optional<int> L;
    std::optional<std::string> gamma, nome;
    std::vector<std::string> mu;
    bool trig = false;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App* app) {
        app->add_option("--config", config, "JSON configuration file");
        app->add_option("--L", L, "chain length");
        app->add_option("--gamma", gamma, "crossing parameter RE,IM");
        app->add_option("--nome", nome, "elliptic nome RE,IM");
        app->add_option("--mu", mu, "inhomogeneities, one RE,IM per site")->take_all();
        app->add_flag("--trig", trig, "six-vertex (trigonometric) regime");
        app->add_option("--seed", seed, "64-bit seed");
    }

    RunConfig resolve() const {
        RunConfig cfg = config.empty() ? RunConfig{} : load_config(config);
        if (L) cfg.L = *L;
        if (gamma) cfg.gamma = parse_complex(*gamma, "gamma");
        if (nome) {
            if (trig) throw ConfigError("nome: conflicts with --trig");
            cfg.nome = parse_complex(*nome, "nome");
            cfg.trig = false;
        }
        if (!mu.empty()) {
            std::vector<Complex> m;
            for (const auto& s : mu) m.push_back(parse_complex(s, "mu"));
            cfg.mu = std::move(m);
        }
        if (trig) cfg.trig = true;
        if (seed) cfg.seed = *seed;
        return cfg;
    }
};

std::vector<Complex> parse_list(const std::vector<std::string>& items, const std::string& field) {
    std::vector<Complex> out;
    for (const auto& s : items) out.push_back(parse_complex(s, field));
    return out;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification harness for Yang-Baxter algebra computations"};
    app.require_subcommand(1);

    ModelFlags run_model;
    std::optional<std::string> checks;
    std::optional<int> samples, threads;
    std::vector<std::string> tol_overrides;
    auto* run = app.add_subcommand("run", "run verification checks and stream JSON-lines records");
    run_model.attach(run);
    run->add_option("--checks", checks, "comma-separated check names");
    run->add_option("--samples", samples, "samples per check");
    run->add_option("--threads", threads, "worker threads");
    run->add_option("--tol", tol_overrides, "tolerance override CHECK=VALUE (repeatable)");

    auto* compute = app.add_subcommand("compute", "evaluate Z or S_n");
    compute->require_subcommand(1);
    ModelFlags z_model, sn_model;
    ComputeArgs z_args, sn_args;
    std::optional<std::string> z_theta;
    std::vector<std::string> z_lambda, sn_b, sn_c;
    auto* cz = compute->add_subcommand("z", "domain-wall partition function");
    z_model.attach(cz);
    cz->add_option("--method", z_args.method, "bruteforce | contour | both");
    cz->add_option("--lambda", z_lambda, "spectral parameters RE,IM (L of them)")->take_all();
    cz->add_option("--theta", z_theta, "dynamical parameter RE,IM");
    auto* cs = compute->add_subcommand("sn", "off-shell scalar product");
    sn_model.attach(cs);
    cs->add_option("--method", sn_args.method, "bruteforce | contour | both");
    cs->add_option("--n", sn_args.n, "number of B and C operators");
    cs->add_option("--lambda-b", sn_b, "B-operator parameters RE,IM")->take_all();
    cs->add_option("--lambda-c", sn_c, "C-operator parameters RE,IM")->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    RunConfig cfg;
    try {
        if (run->parsed()) {
            cfg = run_model.resolve();
            if (checks) cfg.checks = split_csv(*checks);
            if (samples) cfg.samples = *samples;
            if (threads) cfg.threads = *threads;
            for (const auto& t : tol_overrides) {
                const auto eq = t.find('=');
                if (eq == std::string::npos) throw ConfigError("tol: expected CHECK=VALUE, got '" + t + "'");
                try {
                    cfg.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
                } catch (const std::logic_error&) {
                    throw ConfigError("tol: cannot parse value in '" + t + "'");
                }
            }
            cfg.validate();
        } else if (cz->parsed()) {
            cfg = z_model.resolve();
            z_args.lambda = parse_list(z_lambda, "lambda");
            if (z_theta) z_args.theta = parse_complex(*z_theta, "theta");
            cli::detail::validate_method(z_args.method);
            (void)cfg.model();
        } else {
            cfg = sn_model.resolve();
            sn_args.lambda_b = parse_list(sn_b, "lambda-b");
            sn_args.lambda_c = parse_list(sn_c, "lambda-c");
            cli::detail::validate_method(sn_args.method);
            (void)cfg.model();
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    }

    if (run->parsed()) {
        try {
            return run_checks(cfg, std::cout);
        } catch (const ConfigError& e) {
            std::cerr << "configuration error: " << e.what() << '\n';
            return 2;
        }
    }
    try {
        const json out = cz->parsed() ? compute_z(cfg, z_args) : compute_sn(cfg, sn_args);
        std::cout << out.dump() << '\n';
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
