// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#include "spectriv/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace spectriv::io {

using nlohmann::json;

namespace {

json fourier_to_obj(const FourierSeq& f) {
    json coeffs = json::array();
    for (int k = -f.support(); k <= f.support(); ++k) {
        const auto z = f.coeff(k);
        coeffs.push_back(json::array({k, z.real(), z.imag()}));
    }
    return json{{"K", f.support()}, {"hermitian", f.hermitian()}, {"coeffs", coeffs}};
}

FourierSeq fourier_from_obj(const json& obj) {
    const int bound = obj.at("K").get<int>();
    FourierSeq f(bound, false);
    for (const auto& entry : obj.at("coeffs")) {
        const int k = entry.at(0).get<int>();
        f.set_coeff(k, {entry.at(1).get<double>(), entry.at(2).get<double>()});
    }
    if (obj.at("hermitian").get<bool>()) {
        f.set_hermitian(true);  // throws if the coefficients do not match
    }
    return f;
}

json spectrum_to_obj(const dgp::SpectrumSpec& spec) {
    json x = json::array(), w = json::array(), c = json::array();
    for (int k = 0; k <= spec.support(); ++k) {
        x.push_back(spec.x(k));
        w.push_back(spec.w(k));
        c.push_back(spec.c(k));
    }
    return json{{"K", spec.support()}, {"x", x}, {"w", w}, {"c", c}};
}

dgp::SpectrumSpec spectrum_from_obj(const json& obj) {
    const auto x = obj.at("x").get<std::vector<double>>();
    const auto w = obj.at("w").get<std::vector<double>>();
    const auto c = obj.at("c").get<std::vector<double>>();
    if (obj.contains("K") && obj.at("K").get<int>() + 1 != static_cast<int>(x.size())) {
        throw std::runtime_error("spectrum: K does not match profile length");
    }
    return {x, w, c};
}

std::string decay_name(dgp::DecayVariant v) {
    return v == dgp::DecayVariant::polynomial ? "polynomial" : "exponential";
}

dgp::DecayVariant decay_from_name(const std::string& name) {
    if (name == "polynomial") return dgp::DecayVariant::polynomial;
    if (name == "exponential") return dgp::DecayVariant::exponential;
    throw std::runtime_error("unknown decay case '" + name + "' (polynomial|exponential)");
}

}  // namespace

std::string to_json(const FourierSeq& f) { return fourier_to_obj(f).dump(); }

FourierSeq fourier_from_json(const std::string& text) {
    return fourier_from_obj(json::parse(text));
}

std::string to_json(const dgp::SpectrumSpec& spec) { return spectrum_to_obj(spec).dump(); }

dgp::SpectrumSpec spectrum_from_json(const std::string& text) {
    return spectrum_from_obj(json::parse(text));
}

void write_sample_jsonl(std::ostream& os, const dgp::Sample& sample) {
    json header{{"kind", "spectriv.sample"},
                {"n", sample.n()},
                {"K", sample.support()},
                {"sigma", sample.sigma},
                {"endo", sample.endo}};
    if (sample.spec) header["spec"] = spectrum_to_obj(*sample.spec);
    os << header.dump() << '\n';
    for (std::size_t i = 0; i < sample.n(); ++i) {
        os << json{{"y", sample.y[i]},
                   {"x", fourier_to_obj(sample.xc[i])},
                   {"w", fourier_to_obj(sample.wc[i])}}
                  .dump()
           << '\n';
    }
}

dgp::Sample read_sample_jsonl(std::istream& is) {
    std::string line;
    std::size_t line_no = 0;
    dgp::Sample sample;
    std::size_t expected = 0;
    bool have_header = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw std::runtime_error("sample line " + std::to_string(line_no) +
                                     ": malformed JSON: " + e.what());
        }
        try {
            if (!have_header) {
                if (obj.value("kind", "") != "spectriv.sample") {
                    throw std::runtime_error("missing sample header");
                }
                expected = obj.at("n").get<std::size_t>();
                sample.sigma = obj.at("sigma").get<double>();
                sample.endo = obj.at("endo").get<double>();
                if (obj.contains("spec")) sample.spec = spectrum_from_obj(obj.at("spec"));
                have_header = true;
                continue;
            }
            sample.y.push_back(obj.at("y").get<double>());
            sample.xc.push_back(fourier_from_obj(obj.at("x")));
            sample.wc.push_back(fourier_from_obj(obj.at("w")));
        } catch (const std::exception& e) {
            throw std::runtime_error("sample line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_header) throw std::runtime_error("sample: empty input, no header line");
    if (sample.n() != expected) {
        throw std::runtime_error("sample: header count " + std::to_string(expected) +
                                 " does not match " + std::to_string(sample.n()) + " records");
    }
    return sample;
}

std::string diagnostics_json(const estimator::Intermediates& inter, double beta_nu_norm_sq) {
    json lamhat = json::array(), ghat = json::array();
    for (int k = -inter.support; k <= inter.support; ++k) {
        const std::size_t j = inter.index(k);
        lamhat.push_back(json::array({k, inter.lambda_hat[j]}));
        ghat.push_back(json::array({k, inter.g_hat[j].real(), inter.g_hat[j].imag()}));
    }
    return json{{"alpha", inter.alpha},
                {"nu", inter.nu},
                {"active_frequencies", inter.active},
                {"lamhat", lamhat},
                {"ghat", ghat},
                {"lambda_identity_residual", inter.lambda_identity_residual},
                {"beta_nu_norm_sq", beta_nu_norm_sq}}
        .dump();
}

namespace {
json index_function_obj(const theory::IndexFunction& kappa) {
    return json{{"variant", kappa.variant() == theory::IndexVariant::polynomial ? "polynomial"
                                                                                : "logarithmic"},
                {"a", kappa.a()},
                {"p", kappa.p()},
                {"nu", kappa.nu()}};
}
}  // namespace

std::string link_report_json(const theory::LinkReport& report, const theory::IndexFunction& kappa,
                             std::span<const double> lambda) {
    json per_k = json::array();
    for (std::size_t j = 0; j < report.log_ratio.size(); ++j) {
        per_k.push_back(json{{"k", j},
                             {"lambda", lambda[j]},
                             {"log_ratio", report.log_ratio[j]},
                             {"pass", static_cast<bool>(report.pass[j])}});
    }
    return json{{"kappa", index_function_obj(kappa)},
                {"d", report.d_given},
                {"lambda_plus", report.lambda_plus},
                {"per_k", per_k},
                {"all_pass", report.all_pass},
                {"minimal_d", report.minimal_d},
                {"minimal_log_d", report.minimal_log_d}}
        .dump();
}

std::string balance_json(const theory::BalanceResult& result, const theory::IndexFunction& kappa,
                         std::size_t n, double triangle_max) {
    return json{{"kappa", index_function_obj(kappa)},
                {"n", n},
                {"triangle_max", triangle_max},
                {"kstar", result.kstar},
                {"kstar_real", result.kstar_real},
                {"deltastar", result.deltastar},
                {"rate", result.rate},
                {"log_discrete_sum", result.log_discrete_sum},
                {"triangle", result.triangle},
                {"log_triangle", result.log_triangle}}
        .dump();
}

std::string config_json(const experiments::ExperimentConfig& config) {
    json obj{{"case", decay_name(config.decay)},
             {"a", config.a},
             {"p", config.p},
             {"nu", config.nu},
             {"rho", config.rho},
             {"slope_fill", config.slope_fill},
             {"sigma", config.sigma},
             {"endo", config.endo},
             {"K", config.support_bound},
             {"n_grid", config.n_grid},
             {"reps", config.reps},
             {"generic_threshold", config.generic_threshold},
             {"slope_tolerance", config.slope_tolerance},
             {"master_seed", config.master_seed},
             {"x_factor", config.x_factor},
             {"w_decay", config.w_decay}};
    if (config.threshold_const) {
        obj["threshold_const"] = *config.threshold_const;
    } else {
        obj["threshold_const"] = nullptr;
    }
    return obj.dump(2);
}

experiments::ExperimentConfig config_from_json(const std::string& text) {
    const json obj = json::parse(text);
    experiments::ExperimentConfig config;
    config.decay = decay_from_name(obj.value("case", "polynomial"));
    config.a = obj.value("a", config.a);
    config.p = obj.value("p", config.p);
    config.nu = obj.value("nu", config.nu);
    config.rho = obj.value("rho", config.rho);
    config.slope_fill = obj.value("slope_fill", config.slope_fill);
    config.sigma = obj.value("sigma", config.sigma);
    config.endo = obj.value("endo", config.endo);
    config.support_bound = obj.value("K", config.support_bound);
    if (obj.contains("n_grid")) config.n_grid = obj.at("n_grid").get<std::vector<std::size_t>>();
    config.reps = obj.value("reps", config.reps);
    if (obj.contains("threshold_const") && !obj.at("threshold_const").is_null()) {
        config.threshold_const = obj.at("threshold_const").get<double>();
    }
    config.generic_threshold = obj.value("generic_threshold", config.generic_threshold);
    config.slope_tolerance = obj.value("slope_tolerance", config.slope_tolerance);
    config.master_seed = obj.value("master_seed", config.master_seed);
    // accepted on input, never echoed: worker count is a runtime knob, not
    // part of the experiment identity
    config.threads = obj.value("threads", config.threads);
    config.x_factor = obj.value("x_factor", config.x_factor);
    config.w_decay = obj.value("w_decay", config.w_decay);
    return config;
}

std::string report_json(const experiments::RiskReport& report) {
    json per_n = json::array();
    for (const auto& cell : report.per_n) {
        per_n.push_back(json{{"n", cell.n},
                             {"alpha", cell.alpha},
                             {"mean_risk", cell.mean_risk},
                             {"se_risk", cell.se_risk},
                             {"mean_active", cell.mean_active},
                             {"min_active", cell.min_active},
                             {"max_active", cell.max_active}});
    }
    json fit{{"slope", report.fit.slope},  // NaN serializes to null
             {"ci_lo", report.fit.ci_lo},
             {"ci_hi", report.fit.ci_hi},
             {"points_used", report.fit.points_used},
             {"excluded_n", report.fit.excluded_n}};
    json obj{{"config", json::parse(config_json(report.config))},
             {"threshold_const_used", report.threshold_const_used},
             {"per_n", per_n},
             {"fit", fit},
             {"slope_within_tolerance", report.slope_within_tolerance}};
    if (std::isnan(report.theory_slope)) {
        obj["theory_slope"] = nullptr;
    } else {
        obj["theory_slope"] = report.theory_slope;
    }
    return obj.dump(2);
}

void write_csv(std::ostream& os, std::span<const experiments::RepRow> rows) {
    os << "n,rep,risk,alpha,active_count\n";
    char buf[160];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%zu,%d,%.17g,%.17g,%d\n", row.n, row.rep, row.risk,
                      row.alpha, row.active_count);
        os << buf;
    }
}

std::vector<experiments::RepRow> read_csv(std::istream& is) {
    std::vector<experiments::RepRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line_no == 1) {
            if (line != "n,rep,risk,alpha,active_count") {
                throw std::runtime_error("csv line 1: unexpected header '" + line + "'");
            }
            continue;
        }
        if (line.empty()) continue;
        experiments::RepRow row;
        unsigned long long n = 0;
        if (std::sscanf(line.c_str(), "%llu,%d,%lg,%lg,%d", &n, &row.rep, &row.risk, &row.alpha,
                        &row.active_count) != 5) {
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": malformed row");
        }
        row.n = static_cast<std::size_t>(n);
        rows.push_back(row);
    }
    return rows;
}

std::string simulate_config_json(const SimulateConfig& config) {
    return json{{"case", decay_name(config.decay)},
                {"a", config.a},
                {"K", config.support_bound},
                {"p", config.p},
                {"rho", config.rho},
                {"slope_fill", config.slope_fill},
                {"slope_K", config.slope_support},
                {"sigma", config.sigma},
                {"endo", config.endo},
                {"n", config.n},
                {"seed", config.seed},
                {"correlation", config.perfect_correlation ? "perfect" : "default"},
                {"x_factor", config.x_factor},
                {"w_decay", config.w_decay}}
        .dump(2);
}

SimulateConfig simulate_config_from_json(const std::string& text) {
    const json obj = json::parse(text);
    SimulateConfig config;
    config.decay = decay_from_name(obj.value("case", "polynomial"));
    config.a = obj.value("a", config.a);
    config.support_bound = obj.value("K", config.support_bound);
    config.p = obj.value("p", config.p);
    config.rho = obj.value("rho", config.rho);
    config.slope_fill = obj.value("slope_fill", config.slope_fill);
    config.slope_support = obj.value("slope_K", config.slope_support);
    config.sigma = obj.value("sigma", config.sigma);
    config.endo = obj.value("endo", config.endo);
    config.n = obj.value("n", config.n);
    config.seed = obj.value("seed", config.seed);
    const std::string corr = obj.value("correlation", "default");
    if (corr == "perfect") {
        config.perfect_correlation = true;
    } else if (corr == "default") {
        config.perfect_correlation = false;
    } else {
        throw std::runtime_error("unknown correlation '" + corr + "' (default|perfect)");
    }
    config.x_factor = obj.value("x_factor", config.x_factor);
    config.w_decay = obj.value("w_decay", config.w_decay);
    return config;
}

}  // namespace spectriv::io
