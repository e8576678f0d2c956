// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
//
// spectriv: simulate functional linear instrumental regression data, run the
// two-stage spectral cut-off estimator, and reproduce convergence-rate
// experiments.
//
// Subcommands: simulate, estimate, rates, link-check, balance.
// Exit codes: 0 success, 2 missing input file, 1 anything else.
// The FLIR_SEED environment variable overrides config seeds.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "spectriv/dgp.hpp"
#include "spectriv/estimator.hpp"
#include "spectriv/experiments.hpp"
#include "spectriv/io.hpp"
#include "spectriv/theory.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitMissingFile = 2;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::optional<std::uint64_t> env_seed_override() {
    const char* value = std::getenv("FLIR_SEED");
    if (value == nullptr || *value == '\0') return std::nullopt;
    return std::strtoull(value, nullptr, 10);
}

int require_file(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        std::cerr << "error: input file not found: " << path.string() << '\n';
        return kExitMissingFile;
    }
    return kExitOk;
}

spectriv::theory::IndexFunction parse_index_function(const std::string& name, double a, double p,
                                                     double nu) {
    using spectriv::theory::IndexFunction;
    if (name == "polynomial") return IndexFunction::polynomial(a, p, nu);
    if (name == "logarithmic") return IndexFunction::logarithmic(a, p, nu);
    throw std::runtime_error("unknown index variant '" + name + "' (polynomial|logarithmic)");
}

int cmd_simulate(const std::string& config_path, const std::string& out_path, bool print_defaults,
                 std::optional<std::uint64_t> seed_flag) {
    namespace dgp = spectriv::dgp;
    if (print_defaults) {
        std::cout << spectriv::io::simulate_config_json(spectriv::io::SimulateConfig{}) << '\n';
        return kExitOk;
    }
    if (int rc = require_file(config_path); rc != kExitOk) return rc;
    auto config = spectriv::io::simulate_config_from_json(read_file(config_path));
    // precedence: --seed > FLIR_SEED > config
    if (auto seed = env_seed_override()) config.seed = *seed;
    if (seed_flag) config.seed = *seed_flag;

    auto spec = dgp::from_decay({config.decay, config.a, config.x_factor, config.w_decay},
                                config.support_bound);
    if (config.perfect_correlation) spec = dgp::with_perfect_correlation(spec);
    const int slope_bound =
        config.slope_support < 0 ? config.support_bound : config.slope_support;
    const auto slope =
        dgp::make_slope({0.0, config.p, config.rho}, slope_bound, config.slope_fill);
    const auto sample =
        dgp::simulate_sample(spec, slope, config.sigma, config.n, config.endo, config.seed);

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output " + out_path);
    spectriv::io::write_sample_jsonl(out, sample);
    if (!out) throw std::runtime_error("write failed for " + out_path);
    std::cout << "wrote " << sample.n() << " records to " << out_path << '\n';
    return kExitOk;
}

int cmd_estimate(const std::string& sample_path, double alpha, double nu,
                 const std::string& out_path, const std::string& diag_path) {
    if (int rc = require_file(sample_path); rc != kExitOk) return rc;
    std::ifstream in(sample_path);
    const auto sample = spectriv::io::read_sample_jsonl(in);

    spectriv::estimator::Intermediates diag;
    const auto beta = spectriv::estimator::estimate_beta(sample, alpha, nu, &diag);

    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output " + out_path);
    out << spectriv::io::to_json(beta) << '\n';
    if (!diag_path.empty()) {
        std::ofstream diag_out(diag_path);
        if (!diag_out) throw std::runtime_error("cannot open output " + diag_path);
        diag_out << spectriv::io::diagnostics_json(diag, spectriv::sobolev_norm_sq(beta, nu))
                 << '\n';
    }
    std::cout << "estimate: " << diag.active.size() << " active frequencies, alpha=" << alpha
              << ", nu=" << nu << '\n';
    return kExitOk;
}

int cmd_rates(const std::string& config_path, const std::string& out_dir, unsigned threads,
              bool print_defaults, std::optional<std::uint64_t> seed_flag) {
    namespace experiments = spectriv::experiments;
    if (print_defaults) {
        std::cout << spectriv::io::config_json(experiments::ExperimentConfig{}) << '\n';
        return kExitOk;
    }
    if (int rc = require_file(config_path); rc != kExitOk) return rc;
    auto config = spectriv::io::config_from_json(read_file(config_path));
    if (threads != 0) config.threads = threads;
    if (auto seed = env_seed_override()) config.master_seed = *seed;
    if (seed_flag) config.master_seed = *seed_flag;

    const auto report = experiments::run_report(config, out_dir);

    char line[160];
    std::printf("%8s %14s %14s %12s %8s\n", "n", "mean_risk", "se", "alpha", "active");
    for (const auto& cell : report.per_n) {
        std::snprintf(line, sizeof line, "%8zu %14.6g %14.3g %12.5g %8.2f", cell.n,
                      cell.mean_risk, cell.se_risk, cell.alpha, cell.mean_active);
        std::printf("%s\n", line);
    }
    std::printf("threshold constant c     %.6g\n", report.threshold_const_used);
    std::printf("fitted slope             %.4f  [%.4f, %.4f]\n", report.fit.slope,
                report.fit.ci_lo, report.fit.ci_hi);
    if (!std::isnan(report.theory_slope)) {
        std::printf("theoretical slope        %.4f\n", report.theory_slope);
        std::printf("within tolerance %.2f    %s\n", report.config.slope_tolerance,
                    report.slope_within_tolerance ? "yes" : "no");
    } else {
        std::printf("theoretical rate law     (log n)^-%.4g\n",
                    (config.p - config.nu) / config.a);
    }
    std::printf("reports under            %s\n", out_dir.c_str());
    return kExitOk;
}

int cmd_link_check(const std::string& decay_name, double a, double p, double nu, int support,
                   double d, const std::string& kappa_name, const std::string& out_path) {
    namespace dgp = spectriv::dgp;
    const auto variant = decay_name == "polynomial" ? dgp::DecayVariant::polynomial
                        : decay_name == "exponential"
                            ? dgp::DecayVariant::exponential
                            : throw std::runtime_error("unknown decay '" + decay_name + "'");
    const auto spec = dgp::from_decay({variant, a, 2.0, 1.0}, support);
    const auto lambda = spec.lambda_all();

    // Matching index-function variant unless overridden.
    const std::string kname =
        !kappa_name.empty() ? kappa_name
                            : (variant == dgp::DecayVariant::polynomial ? "polynomial"
                                                                        : "logarithmic");
    const auto kappa = parse_index_function(kname, a, p, nu);
    const auto report = spectriv::theory::check_link(lambda, kappa, d, spec.lambda_plus());

    std::printf("link check: variant=%s K=%d d=%.4g\n", kname.c_str(), support, d);
    std::printf("  all_pass=%s minimal_d=%.6g (log %.6g)\n", report.all_pass ? "yes" : "no",
                report.minimal_d, report.minimal_log_d);
    for (std::size_t k = 0; k < report.pass.size(); ++k) {
        if (!report.pass[k]) std::printf("  FAIL at |k|=%zu\n", k);
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open output " + out_path);
        out << spectriv::io::link_report_json(report, kappa, lambda) << '\n';
    }
    return kExitOk;
}

int cmd_balance(const std::string& variant, std::size_t n, double a, double p, double nu,
                double triangle_max, const std::string& out_path) {
    const auto kappa = parse_index_function(variant, a, p, nu);
    const auto result = spectriv::theory::balance(n, kappa, triangle_max);
    std::printf("balance: n=%zu variant=%s\n", n, variant.c_str());
    std::printf("  kstar=%ld (continuous %.4f)\n", result.kstar, result.kstar_real);
    std::printf("  deltastar=%.6g rate=%.6g triangle=%.6g\n", result.deltastar, result.rate,
                result.triangle);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open output " + out_path);
        out << spectriv::io::balance_json(result, kappa, n, triangle_max) << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral cut-off estimation for functional linear instrumental regression"};
    app.require_subcommand(1);

    std::string config_path, out_path = "sample.jsonl";
    bool print_defaults = false;
    std::optional<std::uint64_t> sim_seed, rates_seed;
    auto* simulate = app.add_subcommand("simulate", "draw a sample and write JSON lines");
    simulate->add_option("--config", config_path, "simulation config (JSON)");
    simulate->add_option("--out", out_path, "output JSONL path");
    simulate->add_option("--seed", sim_seed, "override the config seed");
    simulate->add_flag("--print-defaults", print_defaults, "print the default config and exit");

    std::string sample_path, beta_path = "beta.json", diag_path;
    double alpha = 0.1, nu = 0.0;
    auto* estimate = app.add_subcommand("estimate", "run the two-stage estimator on a sample");
    estimate->add_option("--sample", sample_path, "sample JSONL path")->required();
    estimate->add_option("--alpha", alpha, "threshold")->required();
    estimate->add_option("--nu", nu, "risk index");
    estimate->add_option("--out", beta_path, "output coefficient JSON");
    estimate->add_option("--diagnostics", diag_path, "optional diagnostics JSON");

    std::string rates_config, rates_dir = "rates-out";
    unsigned threads = 0;
    bool rates_defaults = false;
    auto* rates = app.add_subcommand("rates", "Monte Carlo risk and empirical rate fit");
    rates->add_option("--config", rates_config, "experiment config (JSON)");
    rates->add_option("--out-dir", rates_dir, "output directory");
    rates->add_option("--threads", threads, "worker count (0 = hardware)");
    rates->add_option("--seed", rates_seed, "override the config master seed");
    rates->add_flag("--print-defaults", rates_defaults, "print the default config and exit");

    std::string decay = "polynomial", kappa_override, link_out;
    double la = 1.0, lp = 2.0, lnu = 0.0, ld = 1e6;
    int lk = 50;
    auto* link = app.add_subcommand("link-check", "verify the eigenvalue link condition");
    link->add_option("--decay", decay, "spectrum decay (polynomial|exponential)");
    link->add_option("--a", la, "decay exponent");
    link->add_option("--p", lp, "slope smoothness");
    link->add_option("--nu", lnu, "risk index");
    link->add_option("--K", lk, "support bound");
    link->add_option("--d", ld, "link constant to test against");
    link->add_option("--kappa", kappa_override, "index variant override");
    link->add_option("--out", link_out, "output report JSON");

    std::string bal_variant = "polynomial", bal_out;
    std::size_t bal_n = 1000;
    double ba = 1.0, bp = 2.0, bnu = 0.0, btri = 1e18;
    auto* bal = app.add_subcommand("balance", "solve the rate balancing relation");
    bal->add_option("--variant", bal_variant, "index variant (polynomial|logarithmic)");
    bal->add_option("--n", bal_n, "sample size")->required();
    bal->add_option("--a", ba, "decay exponent");
    bal->add_option("--p", bp, "slope smoothness");
    bal->add_option("--nu", bnu, "risk index");
    bal->add_option("--triangle-max", btri, "largest admissible bracketing constant");
    bal->add_option("--out", bal_out, "output JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            if (!print_defaults && config_path.empty()) {
                std::cerr << "error: simulate: --config is required\n";
                return kExitError;
            }
            return cmd_simulate(config_path, out_path, print_defaults, sim_seed);
        }
        if (estimate->parsed()) return cmd_estimate(sample_path, alpha, nu, beta_path, diag_path);
        if (rates->parsed()) {
            if (!rates_defaults && rates_config.empty()) {
                std::cerr << "error: rates: --config is required\n";
                return kExitError;
            }
            return cmd_rates(rates_config, rates_dir, threads, rates_defaults, rates_seed);
        }
        if (link->parsed()) {
            return cmd_link_check(decay, la, lp, lnu, lk, ld, kappa_override, link_out);
        }
        if (bal->parsed()) return cmd_balance(bal_variant, bal_n, ba, bp, bnu, btri, bal_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
