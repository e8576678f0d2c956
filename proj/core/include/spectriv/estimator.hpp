// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "spectriv/dgp.hpp"
#include "spectriv/spectral.hpp"

namespace spectriv::estimator {

/// Per-frequency intermediates of the two-stage pipeline, indexed k + K.
///
/// lambda_hat satisfies lambda_hat_k = |c_hat_k|^2 / w_hat_k * 1{w_hat_k >= alpha}
/// identically; the largest deviation observed between the two routes is
/// recorded in lambda_identity_residual.
struct Intermediates {
    double alpha = 0.0;
    double nu = 0.0;
    int support = 0;
    std::vector<std::complex<double>> c_hat;
    std::vector<double> w_hat;
    std::vector<double> lambda_hat;
    std::vector<std::complex<double>> g_hat;
    std::vector<int> active;  // frequencies with lambda_hat_k / gamma_k^nu >= alpha
    double lambda_identity_residual = 0.0;

    std::size_t index(int k) const { return static_cast<std::size_t>(k + support); }
};

/// First-stage moment estimates: c_hat_k = (1/n) sum conj(X_ik) W_ik and
/// w_hat_k = (1/n) sum |W_ik|^2 over |k| <= K.  Throws on an empty sample.
void estimate_cw(const dgp::Sample& sample, std::vector<std::complex<double>>& c_hat,
                 std::vector<double>& w_hat);

/// Estimated optimal instrument per record:
/// <What_i, phi_k> = conj(c_hat_k)/w_hat_k * 1{w_hat_k >= alpha} * W_ik.
/// Frequencies cut in the first stage contribute exactly zero.
std::vector<FourierSeq> estimate_instrument(const dgp::Sample& sample,
                                            const std::vector<std::complex<double>>& c_hat,
                                            const std::vector<double>& w_hat, double alpha);

/// Second-stage moments lambda_hat_k = (1/n) sum |What_ik|^2 and
/// g_hat_k = (1/n) sum Y_i What_ik, plus the algebraic-identity check against
/// |c_hat|^2/w_hat (recorded; throws std::logic_error beyond 1e-10).
void estimate_lambda_g(const dgp::Sample& sample, const std::vector<FourierSeq>& instrument,
                       Intermediates& inter);

/// Full two-stage spectral cut-off estimate with the same threshold alpha in
/// both stages.  Coefficient at k is g_hat_k / lambda_hat_k where
/// lambda_hat_k / gamma_k^nu >= alpha, zero elsewhere.  Hermitian whenever the
/// sample coefficient sequences are hermitian.
FourierSeq estimate_beta(const dgp::Sample& sample, double alpha, double nu,
                         Intermediates* diagnostics = nullptr);

/// Population regularized target: beta_k * 1{lambda_k / gamma_k^nu >= alpha},
/// i.e. the hard-thresholded slope (g_k = beta_k lambda_k cancels).
FourierSeq oracle_beta_reg(const dgp::SpectrumSpec& spec, const FourierSeq& beta, double alpha,
                           double nu);

enum class RateCase { polynomial, exponential, generic };

struct ThresholdChoice {
    double alpha = 0.0;
    double exponent = 0.0;  // alpha = c * n^(-exponent)
    /// For the polynomial rule, (alpha^2 n)^-1 = o(1) requires exponent < 1/2;
    /// false flags a parameter combination where the rule loses consistency.
    bool consistency_ok = true;
};

/// Threshold schedule: polynomial  c n^(-2(a+nu)/(2(p+a)+1)),
/// exponential  c n^(-1/4), generic fallback  c n^(-1/3).
ThresholdChoice threshold_rule(RateCase rate_case, std::size_t n, double a, double p, double nu,
                               double c);

inline RateCase to_rate_case(dgp::DecayVariant v) {
    return v == dgp::DecayVariant::polynomial ? RateCase::polynomial : RateCase::exponential;
}

}  // namespace spectriv::estimator
