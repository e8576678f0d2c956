// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#include "spectriv/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "spectriv/spectral.hpp"

namespace spectriv::theory {

namespace {

constexpr double kLogClamp = 1e-9;

double gamma_at_real(double t) {
    const double w = 2.0 * std::numbers::pi * t;
    return 1.0 + w * w;
}

// Adaptive Simpson on [a, b] with absolute tolerance tol.
double simpson_slice(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const auto& f, double a, double fa, double b, double fb, double m,
                        double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_slice(a, fa, m, fm, flm);
    const double right = simpson_slice(m, fm, b, fb, frm);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double integrate(const auto& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    return adaptive_simpson(f, a, fa, b, fb, m, fm, simpson_slice(a, fa, b, fb, fm), tol, 48);
}

}  // namespace

IndexFunction::IndexFunction(IndexVariant variant, double a, double p, double nu)
    : variant_(variant), a_(a), p_(p), nu_(nu) {
    if (!(a > 0.0)) throw std::invalid_argument("IndexFunction: requires a > 0");
    if (!(nu >= 0.0) || !(nu < p)) throw std::invalid_argument("IndexFunction: requires 0 <= nu < p");
}

double IndexFunction::kappa(double t) const {
    if (!(t > 0.0)) throw std::domain_error("IndexFunction::kappa: requires t > 0");
    if (variant_ == IndexVariant::polynomial) {
        return std::pow(t, (p_ - nu_) / (a_ + nu_));
    }
    const double tc = std::min(t, 1.0 - kLogClamp);
    return std::pow(-std::log(tc), -(p_ - nu_) / a_);
}

double IndexFunction::phi(double s) const {
    if (!(s > 0.0)) throw std::domain_error("IndexFunction::phi: requires s > 0");
    if (variant_ == IndexVariant::polynomial) {
        return std::pow(s, (a_ + nu_) / (p_ - nu_));
    }
    return std::exp(-std::pow(s, -a_ / (p_ - nu_)));
}

double IndexFunction::log_phi_at_gamma(double gamma_value) const {
    if (variant_ == IndexVariant::polynomial) {
        return -(a_ + nu_) * std::log(gamma_value);
    }
    return -std::pow(gamma_value, a_);
}

double IndexFunction::rate_at_gamma(double gamma_value) const {
    return std::pow(gamma_value, nu_ - p_);
}

LinkReport check_link(std::span<const double> lambda, const IndexFunction& kappa, double d,
                      double lambda_plus) {
    if (lambda.empty()) throw std::invalid_argument("check_link: empty spectrum");
    if (!(d >= 1.0)) throw std::invalid_argument("check_link: requires d >= 1");
    if (!(lambda_plus >= 1.0)) throw std::invalid_argument("check_link: requires lambda_plus >= 1");

    LinkReport report;
    report.d_given = d;
    report.lambda_plus = lambda_plus;
    const double log_d = std::log(d);
    double worst = 0.0;
    const double inf = std::numeric_limits<double>::infinity();

    for (std::size_t j = 0; j < lambda.size(); ++j) {
        if (lambda[j] < 0.0) throw std::invalid_argument("check_link: negative lambda_k");
        const double g = gamma_weight(static_cast<int>(j));
        double log_ratio;
        if (lambda[j] == 0.0) {
            log_ratio = -inf;
        } else {
            log_ratio = std::log(lambda[j]) - kappa.nu() * std::log(g) - std::log(lambda_plus) -
                        kappa.log_phi_at_gamma(g);
        }
        report.log_ratio.push_back(log_ratio);
        report.pass.push_back(std::abs(log_ratio) <= log_d + 1e-12);
        worst = std::max(worst, std::abs(log_ratio));
    }
    report.all_pass = std::all_of(report.pass.begin(), report.pass.end(), [](bool b) { return b; });
    report.minimal_log_d = worst;
    report.minimal_d = std::exp(worst);  // inf when a lambda_k vanished
    return report;
}

BalanceResult balance(std::size_t n, const IndexFunction& kappa, double triangle_max) {
    if (n < 2) throw std::invalid_argument("balance: requires n >= 2");
    if (!(triangle_max >= 1.0)) throw std::invalid_argument("balance: requires triangle_max >= 1");
    const double log_n = std::log(static_cast<double>(n));
    const double p_minus_nu = kappa.p() - kappa.nu();

    // log of the continuous balancing sum
    //   S(t) = gamma(t)^(p-nu) / n * Int_{-t}^{t} du / phi(gamma(u)^(nu-p)),
    // with the integrand peak at |u| = t factored out so the exponential
    // variant stays in range.
    const auto log_sum = [&](double t) {
        const double g_peak = -kappa.log_phi_at_gamma(gamma_at_real(t));
        const auto integrand = [&](double u) {
            return std::exp(-kappa.log_phi_at_gamma(gamma_at_real(u)) - g_peak);
        };
        const double body = 2.0 * integrate(integrand, 0.0, t, 1e-12);
        return p_minus_nu * std::log(gamma_at_real(t)) - log_n + g_peak +
               std::log(std::max(body, std::numeric_limits<double>::min()));
    };

    double lo = 1e-9;
    double hi = 1.0;
    while (log_sum(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e12) throw InfeasibleBalanceError("balance: no finite root", log_sum(1e12), 0);
    }
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-14 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (log_sum(mid) < 0.0 ? lo : hi) = mid;
    }
    const double t_star = 0.5 * (lo + hi);

    BalanceResult out;
    out.kstar_real = t_star;
    out.kstar = std::max(1L, std::lround(t_star));
    const double gamma_star = gamma_at_real(t_star);
    out.deltastar = std::exp(kappa.log_phi_at_gamma(gamma_star));
    out.rate = kappa.rate_at_gamma(gamma_star);

    // Discrete bracketing constant at the reported integer: log-sum-exp of
    // log(gamma_{k*}^(p-nu) / (n phi(gamma_k^(nu-p)))) over |k| <= k*.
    const auto discrete_log_sum = [&](long kstar) {
        const double head = p_minus_nu * std::log(gamma_weight(static_cast<int>(kstar))) - log_n;
        double peak = -std::numeric_limits<double>::infinity();
        std::vector<double> logs;
        std::vector<double> mult;
        for (long k = 0; k <= kstar; ++k) {
            const double lg = -kappa.log_phi_at_gamma(gamma_weight(static_cast<int>(k)));
            logs.push_back(lg);
            mult.push_back(k == 0 ? 1.0 : 2.0);
            peak = std::max(peak, lg);
        }
        double acc = 0.0;
        for (std::size_t j = 0; j < logs.size(); ++j) acc += mult[j] * std::exp(logs[j] - peak);
        return head + peak + std::log(acc);
    };

    out.log_discrete_sum = discrete_log_sum(out.kstar);
    out.log_triangle = std::abs(out.log_discrete_sum);
    out.triangle = std::exp(out.log_triangle);

    if (out.log_triangle > std::log(triangle_max)) {
        // Report the integer k whose sum is log-closest to 1 as the best try.
        double best = out.log_triangle;
        long best_k = out.kstar;
        for (long k = 1; k <= out.kstar + 2; ++k) {
            const double s = discrete_log_sum(k);
            if (std::abs(s) < best) {
                best = std::abs(s);
                best_k = k;
            }
            if (s > 0.0) break;  // the sum increases in k*
        }
        throw InfeasibleBalanceError(
            "balance: no integer k* brackets the sum within triangle_max", best, best_k);
    }
    return out;
}

double minimax_rate(SmoothingCase smoothing, std::size_t n, double a, double p, double nu) {
    if (n < 2) throw std::invalid_argument("minimax_rate: requires n >= 2");
    if (!(a > 0.0)) throw std::invalid_argument("minimax_rate: requires a > 0");
    if (!(nu >= 0.0) || !(nu < p)) throw std::invalid_argument("minimax_rate: requires 0 <= nu < p");
    const double nn = static_cast<double>(n);
    if (smoothing == SmoothingCase::polynomial) {
        return std::pow(nn, -2.0 * (p - nu) / (2.0 * (p + a) + 1.0));
    }
    return std::pow(std::log(nn), -(p - nu) / a);
}

}  // namespace spectriv::theory
