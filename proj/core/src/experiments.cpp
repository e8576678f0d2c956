// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#include "spectriv/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "spectriv/io.hpp"

namespace spectriv::experiments {

namespace {

// Two-sided 97.5% Student-t quantiles for small df; the tail is close enough
// to normal past df = 30.
double t_quantile_975(int df) {
    static constexpr double table[] = {12.7062, 4.3027, 3.1824, 2.7764, 2.5706, 2.4469,
                                       2.3646,  2.3060, 2.2622, 2.2281, 2.2010, 2.1788,
                                       2.1604,  2.1448, 2.1314, 2.1199, 2.1098, 2.1009,
                                       2.0930,  2.0860, 2.0796, 2.0739, 2.0687, 2.0639,
                                       2.0595,  2.0555, 2.0518, 2.0484, 2.0452, 2.0423};
    if (df < 1) throw std::invalid_argument("t_quantile_975: df >= 1 required");
    if (df <= 30) return table[df - 1];
    return 1.9600;
}

// Sobolev tail of the slope profile beyond the stored support: the slope has
// coefficients b gamma_k^-(p+1)/2, so the out-of-support W_nu mass is
// 2 b^2 sum_{k>K} gamma_k^(nu-p-1).
double slope_tail_norm_sq(const ExperimentConfig& c) {
    double norm_at_unit = 0.0;
    for (int k = -c.support_bound; k <= c.support_bound; ++k) {
        norm_at_unit += 1.0 / gamma_weight(k);
    }
    const double b_sq = c.slope_fill * c.rho / norm_at_unit;
    double tail = 0.0;
    for (int k = c.support_bound + 1; k <= 2000000; ++k) {
        const double term = std::pow(gamma_weight(k), c.nu - c.p - 1.0);
        tail += term;
        if (term < 1e-18 * std::max(tail, 1e-300)) break;
    }
    return 2.0 * b_sq * tail;
}

}  // namespace

void validate(const ExperimentConfig& config) {
    spectriv::validate(SobolevParams{config.nu, config.p, config.rho});
    if (!(config.a > 0.0)) throw std::invalid_argument("config: requires a > 0");
    if (!(config.sigma > 0.0)) throw std::invalid_argument("config: requires sigma > 0");
    if (!(config.endo >= 0.0 && config.endo < 1.0)) {
        throw std::invalid_argument("config: requires endo in [0,1)");
    }
    if (config.support_bound < 1) throw std::invalid_argument("config: requires K >= 1");
    if (config.n_grid.empty()) throw std::invalid_argument("config: empty n_grid");
    for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
        if (config.n_grid[i] < 2) throw std::invalid_argument("config: n_grid entries must be >= 2");
        if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1]) {
            throw std::invalid_argument("config: n_grid must be strictly increasing");
        }
    }
    if (config.reps < 2) throw std::invalid_argument("config: requires reps >= 2");
    if (!(config.slope_fill > 0.0 && config.slope_fill <= 1.0)) {
        throw std::invalid_argument("config: requires slope_fill in (0,1]");
    }
    if (config.threshold_const && !(*config.threshold_const > 0.0)) {
        throw std::invalid_argument("config: requires threshold_const > 0");
    }
    if (!(config.x_factor > 1.0)) throw std::invalid_argument("config: requires x_factor > 1");
    if (!(config.w_decay > 0.0)) throw std::invalid_argument("config: requires w_decay > 0");

    const auto smoothing = config.decay == dgp::DecayVariant::polynomial
                               ? theory::SmoothingCase::polynomial
                               : theory::SmoothingCase::exponential;
    const double predicted =
        theory::minimax_rate(smoothing, config.n_grid.back(), config.a, config.p, config.nu);
    const double tail = slope_tail_norm_sq(config);
    if (tail > 0.1 * predicted) {
        std::ostringstream msg;
        msg << "config: support bound K=" << config.support_bound
            << " too small, slope tail norm " << tail << " exceeds 10% of predicted risk "
            << predicted;
        throw std::invalid_argument(msg.str());
    }
}

dgp::DecayFamily decay_family(const ExperimentConfig& config) {
    return {config.decay, config.a, config.x_factor, config.w_decay};
}

namespace {
estimator::RateCase rate_case_of(const ExperimentConfig& config) {
    return config.generic_threshold ? estimator::RateCase::generic
                                    : estimator::to_rate_case(config.decay);
}
}  // namespace

double pilot_threshold_const(const ExperimentConfig& config, const dgp::SpectrumSpec& spec) {
    const auto pilot = estimator::threshold_rule(rate_case_of(config), config.n_grid.front(),
                                                 config.a, config.p, config.nu, 1.0);
    std::vector<double> active;
    for (int k = -spec.support(); k <= spec.support(); ++k) {
        if (spec.lambda(k) / std::pow(gamma_weight(k), config.nu) >= pilot.alpha) {
            active.push_back(spec.lambda(k));
        }
    }
    // k = 0 is always active (lambda_0 = 1 and alpha < 1 for n >= 2).
    std::sort(active.begin(), active.end());
    const std::size_t m = active.size();
    const double median =
        m % 2 == 1 ? active[m / 2] : 0.5 * (active[m / 2 - 1] + active[m / 2]);
    return 0.5 * median;
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

FitResult fit_rate(std::span<const PerN> per_n) {
    if (per_n.size() < 3) throw std::invalid_argument("fit_rate: needs at least 3 grid points");
    std::vector<double> xs, ys;
    FitResult out;
    for (const auto& row : per_n) {
        if (row.mean_risk > 0.0) {
            xs.push_back(std::log(static_cast<double>(row.n)));
            ys.push_back(std::log(row.mean_risk));
        } else {
            out.excluded_n.push_back(row.n);
        }
    }
    if (xs.size() < 3) {
        throw std::invalid_argument("fit_rate: fewer than 3 positive-risk points remain");
    }
    const std::size_t m = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    out.slope = sxy / sxx;
    out.points_used = static_cast<int>(m);
    const double intercept = my - out.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = ys[i] - intercept - out.slope * xs[i];
        ssr += r * r;
    }
    const int df = static_cast<int>(m) - 2;
    const double se = std::sqrt(ssr / df / sxx);
    const double half_width = t_quantile_975(df) * se;
    out.ci_lo = out.slope - half_width;
    out.ci_hi = out.slope + half_width;
    return out;
}

RiskReport summarize(const ExperimentConfig& config, double threshold_const_used,
                     std::vector<RepRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const RepRow& a, const RepRow& b) {
        return a.n != b.n ? a.n < b.n : a.rep < b.rep;
    });
    RiskReport report;
    report.config = config;
    report.threshold_const_used = threshold_const_used;

    for (std::size_t n : config.n_grid) {
        std::vector<double> risks;
        PerN cell;
        cell.n = n;
        cell.min_active = std::numeric_limits<int>::max();
        cell.max_active = 0;
        double active_total = 0.0;
        for (const auto& row : rows) {
            if (row.n != n) continue;
            risks.push_back(row.risk);
            cell.alpha = row.alpha;
            active_total += row.active_count;
            cell.min_active = std::min(cell.min_active, row.active_count);
            cell.max_active = std::max(cell.max_active, row.active_count);
        }
        if (risks.size() != static_cast<std::size_t>(config.reps)) {
            throw std::invalid_argument("summarize: replication count mismatch in rows");
        }
        const double r = static_cast<double>(risks.size());
        cell.mean_risk = pairwise_sum(risks) / r;
        std::vector<double> sq(risks.size());
        for (std::size_t i = 0; i < risks.size(); ++i) {
            const double d = risks[i] - cell.mean_risk;
            sq[i] = d * d;
        }
        cell.se_risk = std::sqrt(pairwise_sum(sq) / (r - 1.0) / r);
        cell.mean_active = active_total / r;
        report.per_n.push_back(cell);
    }

    if (report.per_n.size() >= 3) {
        report.fit = fit_rate(report.per_n);
    } else {
        // not enough grid points for a slope; report null fit fields
        report.fit.slope = std::numeric_limits<double>::quiet_NaN();
        report.fit.ci_lo = report.fit.ci_hi = report.fit.slope;
        report.fit.points_used = 0;
    }
    if (config.decay == dgp::DecayVariant::polynomial) {
        report.theory_slope = -2.0 * (config.p - config.nu) / (2.0 * (config.p + config.a) + 1.0);
        report.slope_within_tolerance =
            std::abs(report.fit.slope - report.theory_slope) <= config.slope_tolerance;
    } else {
        // The exponential regime is logarithmic in n; a single log-log slope
        // has no theoretical counterpart.
        report.theory_slope = std::numeric_limits<double>::quiet_NaN();
        report.slope_within_tolerance = false;
    }
    report.rows = std::move(rows);
    return report;
}

RiskReport mc_risk(const ExperimentConfig& config) {
    validate(config);
    const auto spec = dgp::from_decay(decay_family(config), config.support_bound);
    const auto slope =
        dgp::make_slope({config.nu, config.p, config.rho}, config.support_bound, config.slope_fill);
    const double c = config.threshold_const ? *config.threshold_const
                                            : pilot_threshold_const(config, spec);
    const auto rate_case = rate_case_of(config);

    const std::size_t total = config.n_grid.size() * static_cast<std::size_t>(config.reps);
    std::vector<RepRow> rows(total);

    std::atomic<std::size_t> cursor{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;

    const auto worker = [&] {
        for (;;) {
            const std::size_t idx = cursor.fetch_add(1);
            if (idx >= total) return;
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (failure) return;
            }
            try {
                const std::size_t g = idx / static_cast<std::size_t>(config.reps);
                const int rep = static_cast<int>(idx % static_cast<std::size_t>(config.reps));
                const std::size_t n = config.n_grid[g];
                const double alpha =
                    estimator::threshold_rule(rate_case, n, config.a, config.p, config.nu, c)
                        .alpha;
                const std::uint64_t seed =
                    derive_stream(config.master_seed, n, static_cast<std::uint64_t>(rep));
                const auto sample =
                    dgp::simulate_sample(spec, slope, config.sigma, n, config.endo, seed);
                estimator::Intermediates diag;
                const auto beta_hat = estimator::estimate_beta(sample, alpha, config.nu, &diag);
                rows[idx] = {n, rep, sobolev_norm_sq(beta_hat - slope, config.nu), alpha,
                             static_cast<int>(diag.active.size())};
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    unsigned nthreads = config.threads != 0 ? config.threads
                                            : std::max(1u, std::thread::hardware_concurrency());
    nthreads = static_cast<unsigned>(std::min<std::size_t>(nthreads, total));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    return summarize(config, c, std::move(rows));
}

RiskReport run_report(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
    auto report = mc_risk(config);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("run_report: cannot create directory " + out_dir.string() + ": " +
                                 ec.message());
    }
    const auto csv_path = out_dir / "risks.csv";
    {
        std::ofstream csv(csv_path);
        if (!csv) throw std::runtime_error("run_report: cannot open " + csv_path.string());
        io::write_csv(csv, report.rows);
        if (!csv) throw std::runtime_error("run_report: write failed for " + csv_path.string());
    }
    const auto json_path = out_dir / "summary.json";
    {
        std::ofstream js(json_path);
        if (!js) throw std::runtime_error("run_report: cannot open " + json_path.string());
        js << io::report_json(report) << '\n';
        if (!js) throw std::runtime_error("run_report: write failed for " + json_path.string());
    }
    return report;
}

}  // namespace spectriv::experiments
