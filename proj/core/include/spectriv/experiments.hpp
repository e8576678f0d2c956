// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "spectriv/dgp.hpp"
#include "spectriv/estimator.hpp"
#include "spectriv/theory.hpp"

namespace spectriv::experiments {

/// Full description of a Monte Carlo risk experiment.  A fixed config plus
/// master seed determines every byte of the resulting report, independent of
/// the worker count.
struct ExperimentConfig {
    dgp::DecayVariant decay = dgp::DecayVariant::polynomial;
    double a = 1.0;
    double p = 2.0;
    double nu = 0.0;
    double rho = 1.0;
    double slope_fill = 1.0;
    double sigma = 0.5;
    double endo = 0.5;
    int support_bound = 8;
    std::vector<std::size_t> n_grid = {500, 1000, 2000, 4000, 8000};
    int reps = 200;
    /// Threshold constant c in alpha = c * n^(-exponent); unset means the
    /// pilot rule 0.5 * median lambda_k over oracle-active frequencies at the
    /// smallest n.
    std::optional<double> threshold_const;
    /// Use the case-free consistency schedule alpha = c n^(-1/3) instead of
    /// the decay-matched exponent.
    bool generic_threshold = false;
    double slope_tolerance = 0.15;
    std::uint64_t master_seed = 20260808;
    unsigned threads = 0;  // 0 = hardware concurrency
    double x_factor = 2.0;
    double w_decay = 1.0;
};

/// Throws std::invalid_argument with context on any violated invariant,
/// including the support-bound check: the slope profile's out-of-support
/// Sobolev tail must stay below 10% of the predicted risk at the largest n.
void validate(const ExperimentConfig& config);

dgp::DecayFamily decay_family(const ExperimentConfig& config);

/// The pilot default for the threshold constant (see ExperimentConfig).
double pilot_threshold_const(const ExperimentConfig& config, const dgp::SpectrumSpec& spec);

struct RepRow {
    std::size_t n = 0;
    int rep = 0;
    double risk = 0.0;
    double alpha = 0.0;
    int active_count = 0;
};

struct PerN {
    std::size_t n = 0;
    double alpha = 0.0;
    double mean_risk = 0.0;
    double se_risk = 0.0;
    double mean_active = 0.0;
    int min_active = 0;
    int max_active = 0;
};

struct FitResult {
    double slope = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    int points_used = 0;
    std::vector<std::size_t> excluded_n;  // grid points dropped for nonpositive risk
};

struct RiskReport {
    ExperimentConfig config;
    double threshold_const_used = 0.0;
    std::vector<PerN> per_n;
    FitResult fit;
    double theory_slope = 0.0;  // NaN in the exponential regime
    bool slope_within_tolerance = false;
    std::vector<RepRow> rows;  // one row per (n, replication)
};

/// OLS of log mean-risk on log n with a 95% confidence interval.
/// Nonpositive mean risks are excluded; fewer than 3 surviving points throws.
FitResult fit_rate(std::span<const PerN> per_n);

/// Order-insensitive aggregation of replication rows into a report (rows are
/// sorted by (n, rep) and pairwise-summed, so the result does not depend on
/// the order the rows were produced or read back in).
RiskReport summarize(const ExperimentConfig& config, double threshold_const_used,
                     std::vector<RepRow> rows);

/// Runs the Monte Carlo: for each n in the grid, `reps` independent
/// replications of simulate -> estimate -> W_nu risk, each replication seeded
/// from (master_seed, n, rep).
RiskReport mc_risk(const ExperimentConfig& config);

/// mc_risk + per-replication CSV ("risks.csv") + JSON summary ("summary.json")
/// under out_dir.  I/O failures are reported with the offending path.
RiskReport run_report(const ExperimentConfig& config, const std::filesystem::path& out_dir);

/// Deterministic pairwise summation.
double pairwise_sum(std::span<const double> values);

}  // namespace spectriv::experiments
