// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#include "spectriv/dgp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spectriv::dgp {

namespace {
// Keeps exponential eigenvalues representable; exp(-|k|^2a) underflows to an
// exact zero around |k|^2a > 708, which would break the positivity invariants.
constexpr double kLambdaFloor = 1e-290;
}  // namespace

SpectrumSpec::SpectrumSpec(std::vector<double> var_x, std::vector<double> var_w,
                           std::vector<double> cov)
    : var_x_(std::move(var_x)), var_w_(std::move(var_w)), cov_(std::move(cov)) {
    if (var_x_.empty() || var_x_.size() != var_w_.size() || var_x_.size() != cov_.size()) {
        throw std::invalid_argument("SpectrumSpec: profile arrays must share a nonzero size");
    }
    for (std::size_t j = 0; j < var_x_.size(); ++j) {
        if (!(var_x_[j] > 0.0) || !(var_w_[j] > 0.0)) {
            throw std::invalid_argument("SpectrumSpec: variances must be positive");
        }
        // Cauchy-Schwarz; equality (perfect correlation) is allowed.
        if (cov_[j] * cov_[j] > var_x_[j] * var_w_[j] * (1.0 + 1e-12)) {
            throw std::invalid_argument("SpectrumSpec: c_k^2 <= x_k w_k violated");
        }
    }
}

std::size_t SpectrumSpec::index(int k) const {
    const int a = k < 0 ? -k : k;
    if (a >= static_cast<int>(var_x_.size())) {
        throw std::out_of_range("SpectrumSpec: frequency outside support");
    }
    return static_cast<std::size_t>(a);
}

double SpectrumSpec::lambda_plus() const {
    double mx = 1.0;
    for (int k = 0; k <= support(); ++k) mx = std::max(mx, lambda(k));
    return mx;
}

double SpectrumSpec::tau() const {
    double mx = 1.0;
    for (int k = 0; k <= support(); ++k) mx = std::max(mx, lambda(k) / w(k));
    return mx;
}

std::vector<double> SpectrumSpec::lambda_all() const {
    std::vector<double> out(static_cast<std::size_t>(support()) + 1);
    for (int k = 0; k <= support(); ++k) out[static_cast<std::size_t>(k)] = lambda(k);
    return out;
}

double normal_abs_moment(int m) {
    if (m < 1) throw std::invalid_argument("normal_abs_moment: m >= 1 required");
    return std::pow(2.0, m / 2.0) * std::tgamma((m + 1) / 2.0) / std::sqrt(std::numbers::pi);
}

MomentClassSpec moment_class_of(const SpectrumSpec& spec, int m, double d) {
    MomentClassSpec out;
    out.m = m;
    out.eta = std::max(1.0, normal_abs_moment(m));
    out.tau = spec.tau();
    double ex = 0.0;
    double ew = 0.0;
    for (int k = -spec.support(); k <= spec.support(); ++k) {
        ex += spec.x(k);
        ew += spec.w(k);
    }
    out.Lambda = std::max({1.0, ex, ew});
    out.d = std::max(1.0, d);
    return out;
}

SpectrumSpec from_decay(const DecayFamily& family, int support_bound) {
    if (!(family.a > 0.0)) throw std::invalid_argument("from_decay: requires a > 0");
    if (support_bound < 1) throw std::invalid_argument("from_decay: requires K >= 1");
    const std::size_t len = static_cast<std::size_t>(support_bound) + 1;
    std::vector<double> x(len), w(len), c(len);
    for (int k = 0; k <= support_bound; ++k) {
        double lambda;
        if (family.variant == DecayVariant::polynomial) {
            lambda = std::pow(std::max(1.0, static_cast<double>(k)), -2.0 * family.a);
        } else {
            lambda = std::exp(-std::pow(static_cast<double>(k), 2.0 * family.a));
        }
        lambda = std::max(lambda, kLambdaFloor);
        const std::size_t j = static_cast<std::size_t>(k);
        w[j] = std::pow(1.0 + static_cast<double>(k), -family.w_decay);
        c[j] = std::sqrt(lambda * w[j]);
        x[j] = family.x_factor * lambda;
    }
    return SpectrumSpec(std::move(x), std::move(w), std::move(c));
}

SpectrumSpec with_perfect_correlation(const SpectrumSpec& spec) {
    const std::size_t len = static_cast<std::size_t>(spec.support()) + 1;
    std::vector<double> x(len), w(len), c(len);
    for (int k = 0; k <= spec.support(); ++k) {
        const std::size_t j = static_cast<std::size_t>(k);
        x[j] = spec.x(k);
        w[j] = spec.w(k);
        c[j] = std::sqrt(spec.x(k) * spec.w(k));
    }
    return SpectrumSpec(std::move(x), std::move(w), std::move(c));
}

FourierSeq make_slope(const SobolevParams& params, int support_bound, double fill) {
    validate(params);
    if (support_bound < 0) throw std::invalid_argument("make_slope: negative support bound");
    if (!(fill > 0.0 && fill <= 1.0)) throw std::invalid_argument("make_slope: fill in (0,1]");
    // ||beta||_p^2 = b^2 sum gamma_k^p gamma_k^-(p+1) = b^2 sum 1/gamma_k.
    double norm_at_unit = 0.0;
    for (int k = -support_bound; k <= support_bound; ++k) norm_at_unit += 1.0 / gamma_weight(k);
    const double b = std::sqrt(fill * params.rho / norm_at_unit);
    FourierSeq slope(support_bound, true);
    for (int k = 0; k <= support_bound; ++k) {
        slope.set_hermitian_pair(k, b * std::pow(gamma_weight(k), -(params.p + 1.0) / 2.0));
    }
    return slope;
}

std::pair<FourierSeq, FourierSeq> sample_pair(const SpectrumSpec& spec, Rng& rng) {
    const int bound = spec.support();
    FourierSeq x(bound, true);
    FourierSeq w(bound, true);

    // k = 0: real bivariate normal.
    {
        const double sx = std::sqrt(spec.x(0));
        const double n1 = rng.normal();
        const double n2 = rng.normal();
        const double x0 = sx * n1;
        const double cond = spec.w(0) - spec.c(0) * spec.c(0) / spec.x(0);
        const double w0 = (spec.c(0) / spec.x(0)) * x0 + std::sqrt(std::max(0.0, cond)) * n2;
        x.set_hermitian_pair(0, x0);
        w.set_hermitian_pair(0, w0);
    }

    // k > 0: circular complex bivariate normal; real and imaginary parts of
    // X_k are i.i.d. N(0, x_k/2), so E|X_k|^2 = x_k and the conjugate mirror
    // at -k keeps the synthesized function real.
    for (int k = 1; k <= bound; ++k) {
        const std::complex<double> z1 = rng.complex_normal();
        const std::complex<double> z2 = rng.complex_normal();
        const double sx = std::sqrt(spec.x(k));
        const std::complex<double> xk = sx * z1;
        const double cond = spec.w(k) - spec.c(k) * spec.c(k) / spec.x(k);
        const std::complex<double> wk =
            (spec.c(k) / sx) * z1 + std::sqrt(std::max(0.0, cond)) * z2;
        x.set_hermitian_pair(k, xk);
        w.set_hermitian_pair(k, wk);
    }
    return {std::move(x), std::move(w)};
}

double prediction_error_variance(const SpectrumSpec& spec, const FourierSeq& slope) {
    if (slope.support() > spec.support()) {
        throw std::invalid_argument("prediction_error_variance: slope support exceeds spectrum");
    }
    double total = 0.0;
    for (int k = -slope.support(); k <= slope.support(); ++k) {
        total += std::norm(slope.coeff(k)) * (spec.x(k) - spec.lambda(k));
    }
    return total;
}

Sample simulate_sample(const SpectrumSpec& spec, const FourierSeq& slope, double sigma,
                       std::size_t n, double endo, std::uint64_t seed) {
    if (slope.support() > spec.support()) {
        throw std::invalid_argument("simulate_sample: slope support exceeds spectrum support");
    }
    if (!(sigma > 0.0)) throw std::invalid_argument("simulate_sample: requires sigma > 0");
    if (!(endo >= 0.0 && endo < 1.0)) {
        throw std::invalid_argument("simulate_sample: requires endo in [0,1)");
    }

    double z_scale = 0.0;
    if (endo > 0.0) {
        const double var_pred = prediction_error_variance(spec, slope);
        if (!(var_pred > 0.0)) {
            throw std::invalid_argument(
                "simulate_sample: degenerate endogeneity, Var<slope, X - Wtilde> = 0");
        }
        z_scale = 1.0 / std::sqrt(var_pred);
    }

    Sample out;
    out.sigma = sigma;
    out.endo = endo;
    out.spec = spec;
    out.y.resize(n);
    out.xc.reserve(n);
    out.wc.reserve(n);

    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_stream(seed, i));
        auto [x, w] = sample_pair(spec, rng);
        const double eps = rng.normal();

        // <slope, X> = sum_k beta_k conj(X_k); real for hermitian inputs.
        const double signal = inner(slope, x).real();

        double u = std::sqrt(1.0 - endo) * eps;
        if (endo > 0.0) {
            std::complex<double> pred{0.0, 0.0};
            for (int k = -slope.support(); k <= slope.support(); ++k) {
                const std::complex<double> resid =
                    x.coeff(k) - (spec.c(k) / spec.w(k)) * w.coeff(k);
                pred += slope.coeff(k) * std::conj(resid);
            }
            u += std::sqrt(endo) * z_scale * pred.real();
        }

        out.y[i] = signal + sigma * u;
        out.xc.push_back(std::move(x));
        out.wc.push_back(std::move(w));
    }
    return out;
}

}  // namespace spectriv::dgp
