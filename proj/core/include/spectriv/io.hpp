// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spectriv/dgp.hpp"
#include "spectriv/estimator.hpp"
#include "spectriv/experiments.hpp"
#include "spectriv/theory.hpp"

// JSON / JSONL / CSV surfaces.  All emitters are deterministic: object keys
// are sorted and doubles round-trip exactly.

namespace spectriv::io {

std::string to_json(const FourierSeq& f);
FourierSeq fourier_from_json(const std::string& text);

std::string to_json(const dgp::SpectrumSpec& spec);
dgp::SpectrumSpec spectrum_from_json(const std::string& text);

/// JSON lines: a header object carrying n, K, sigma, endo and the spectrum,
/// then one {"y":..,"x":..,"w":..} object per record.
void write_sample_jsonl(std::ostream& os, const dgp::Sample& sample);
/// Throws std::runtime_error naming the offending line on malformed input.
dgp::Sample read_sample_jsonl(std::istream& is);

/// Estimator diagnostics: alpha, nu, active frequencies, lambda_hat, g_hat,
/// the lambda identity residual and the W_nu norm of the estimate.
std::string diagnostics_json(const estimator::Intermediates& inter, double beta_nu_norm_sq);

std::string link_report_json(const theory::LinkReport& report, const theory::IndexFunction& kappa,
                             std::span<const double> lambda);
std::string balance_json(const theory::BalanceResult& result, const theory::IndexFunction& kappa,
                         std::size_t n, double triangle_max);

std::string config_json(const experiments::ExperimentConfig& config);
experiments::ExperimentConfig config_from_json(const std::string& text);

std::string report_json(const experiments::RiskReport& report);

/// CSV schema: n,rep,risk,alpha,active_count (risk and alpha at full precision).
void write_csv(std::ostream& os, std::span<const experiments::RepRow> rows);
std::vector<experiments::RepRow> read_csv(std::istream& is);

/// Config for the `simulate` subcommand.
struct SimulateConfig {
    dgp::DecayVariant decay = dgp::DecayVariant::polynomial;
    double a = 1.0;
    int support_bound = 8;
    double p = 2.0;
    double rho = 1.0;
    double slope_fill = 1.0;
    int slope_support = -1;  // -1: full support
    double sigma = 0.5;
    double endo = 0.0;
    std::size_t n = 100;
    std::uint64_t seed = 1;
    bool perfect_correlation = false;
    double x_factor = 2.0;
    double w_decay = 1.0;
};

std::string simulate_config_json(const SimulateConfig& config);
SimulateConfig simulate_config_from_json(const std::string& text);

}  // namespace spectriv::io
