// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#include "spectriv/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace spectriv::estimator {

void estimate_cw(const dgp::Sample& sample, std::vector<std::complex<double>>& c_hat,
                 std::vector<double>& w_hat) {
    const std::size_t n = sample.n();
    if (n == 0) throw std::invalid_argument("estimate_cw: empty sample");
    if (sample.xc.size() != n || sample.wc.size() != n) {
        throw std::invalid_argument("estimate_cw: ragged sample");
    }
    const int bound = sample.support();
    const std::size_t width = static_cast<std::size_t>(2 * bound + 1);
    c_hat.assign(width, {0.0, 0.0});
    w_hat.assign(width, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = -bound; k <= bound; ++k) {
            const std::size_t j = static_cast<std::size_t>(k + bound);
            const std::complex<double> wk = sample.wc[i].coeff(k);
            c_hat[j] += std::conj(sample.xc[i].coeff(k)) * wk;
            w_hat[j] += std::norm(wk);
        }
    }
    for (std::size_t j = 0; j < width; ++j) {
        c_hat[j] /= static_cast<double>(n);
        w_hat[j] /= static_cast<double>(n);
    }
}

std::vector<FourierSeq> estimate_instrument(const dgp::Sample& sample,
                                            const std::vector<std::complex<double>>& c_hat,
                                            const std::vector<double>& w_hat, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("estimate_instrument: requires alpha > 0");
    const int bound = sample.support();
    if (c_hat.size() != static_cast<std::size_t>(2 * bound + 1) || c_hat.size() != w_hat.size()) {
        throw std::invalid_argument("estimate_instrument: moment arrays do not match sample");
    }
    // Ratio weights conj(c_hat)/w_hat on frequencies surviving the first-stage
    // cut; the indicator guards the division.
    std::vector<std::complex<double>> weight(c_hat.size(), {0.0, 0.0});
    for (int k = -bound; k <= bound; ++k) {
        const std::size_t j = static_cast<std::size_t>(k + bound);
        if (w_hat[j] >= alpha) weight[j] = std::conj(c_hat[j]) / w_hat[j];
    }
    bool herm = !sample.wc.empty();
    for (const auto& rec : sample.wc) herm = herm && rec.hermitian();
    std::vector<FourierSeq> out;
    out.reserve(sample.n());
    for (std::size_t i = 0; i < sample.n(); ++i) {
        FourierSeq wi(bound, herm);
        for (int k = -bound; k <= bound; ++k) {
            const std::size_t j = static_cast<std::size_t>(k + bound);
            wi.set_coeff(k, weight[j] * sample.wc[i].coeff(k));
        }
        out.push_back(std::move(wi));
    }
    return out;
}

void estimate_lambda_g(const dgp::Sample& sample, const std::vector<FourierSeq>& instrument,
                       Intermediates& inter) {
    const std::size_t n = sample.n();
    if (instrument.size() != n) {
        throw std::invalid_argument("estimate_lambda_g: instrument/sample size mismatch");
    }
    const int bound = sample.support();
    const std::size_t width = static_cast<std::size_t>(2 * bound + 1);
    if (inter.c_hat.size() != width || inter.w_hat.size() != width) {
        throw std::invalid_argument("estimate_lambda_g: first-stage moments missing");
    }
    inter.support = bound;
    inter.lambda_hat.assign(width, 0.0);
    inter.g_hat.assign(width, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        for (int k = -bound; k <= bound; ++k) {
            const std::size_t j = static_cast<std::size_t>(k + bound);
            const std::complex<double> wik = instrument[i].coeff(k);
            inter.lambda_hat[j] += std::norm(wik);
            inter.g_hat[j] += sample.y[i] * wik;
        }
    }
    double residual = 0.0;
    for (int k = -bound; k <= bound; ++k) {
        const std::size_t j = static_cast<std::size_t>(k + bound);
        inter.lambda_hat[j] /= static_cast<double>(n);
        inter.g_hat[j] /= static_cast<double>(n);
        const double direct = inter.w_hat[j] >= inter.alpha
                                  ? std::norm(inter.c_hat[j]) / inter.w_hat[j]
                                  : 0.0;
        residual = std::max(residual, std::abs(inter.lambda_hat[j] - direct));
    }
    inter.lambda_identity_residual = residual;
    if (residual > 1e-10) {
        throw std::logic_error("estimate_lambda_g: lambda identity violated beyond 1e-10");
    }
}

FourierSeq estimate_beta(const dgp::Sample& sample, double alpha, double nu,
                         Intermediates* diagnostics) {
    if (!(alpha > 0.0)) throw std::invalid_argument("estimate_beta: requires alpha > 0");
    if (!(nu >= 0.0)) throw std::invalid_argument("estimate_beta: requires nu >= 0");

    Intermediates inter;
    inter.alpha = alpha;
    inter.nu = nu;
    estimate_cw(sample, inter.c_hat, inter.w_hat);
    const auto instrument = estimate_instrument(sample, inter.c_hat, inter.w_hat, alpha);
    estimate_lambda_g(sample, instrument, inter);

    const int bound = sample.support();
    bool herm = true;
    for (const auto& rec : sample.xc) herm = herm && rec.hermitian();
    for (const auto& rec : sample.wc) herm = herm && rec.hermitian();

    FourierSeq beta(bound, herm);
    for (int k = -bound; k <= bound; ++k) {
        const std::size_t j = inter.index(k);
        // lambda_hat = 0 never passes the indicator for alpha > 0.
        if (inter.lambda_hat[j] / std::pow(gamma_weight(k), nu) >= alpha) {
            beta.set_coeff(k, inter.g_hat[j] / inter.lambda_hat[j]);
            inter.active.push_back(k);
        }
    }
    if (diagnostics != nullptr) *diagnostics = std::move(inter);
    return beta;
}

FourierSeq oracle_beta_reg(const dgp::SpectrumSpec& spec, const FourierSeq& beta, double alpha,
                           double nu) {
    if (beta.support() > spec.support()) {
        throw std::invalid_argument("oracle_beta_reg: slope support exceeds spectrum support");
    }
    FourierSeq out(beta.support(), beta.hermitian());
    for (int k = -beta.support(); k <= beta.support(); ++k) {
        if (spec.lambda(k) / std::pow(gamma_weight(k), nu) >= alpha) {
            out.set_coeff(k, beta.coeff(k));
        }
    }
    return out;
}

ThresholdChoice threshold_rule(RateCase rate_case, std::size_t n, double a, double p, double nu,
                               double c) {
    if (n < 2) throw std::invalid_argument("threshold_rule: requires n >= 2");
    if (!(c > 0.0)) throw std::invalid_argument("threshold_rule: requires c > 0");
    ThresholdChoice out;
    switch (rate_case) {
        case RateCase::polynomial:
            if (!(a > 0.0)) throw std::invalid_argument("threshold_rule: requires a > 0");
            out.exponent = 2.0 * (a + nu) / (2.0 * (p + a) + 1.0);
            out.consistency_ok = out.exponent < 0.5;
            break;
        case RateCase::exponential:
            out.exponent = 0.25;
            break;
        case RateCase::generic:
            out.exponent = 1.0 / 3.0;
            break;
    }
    out.alpha = c * std::pow(static_cast<double>(n), -out.exponent);
    return out;
}

}  // namespace spectriv::estimator
