// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace spectriv::theory {

enum class IndexVariant { polynomial, logarithmic };

/// Index function linking eigenvalue decay to the Sobolev scale.
///
/// polynomial   kappa(t) = t^((p-nu)/(a+nu))
/// logarithmic  kappa(t) = |log t|^(-(p-nu)/a), evaluation clamped to
///              t <= 1 - 1e-9 to keep |log t| positive.
/// Both are continuous, strictly increasing, with kappa(0+) = 0.
class IndexFunction {
  public:
    IndexFunction(IndexVariant variant, double a, double p, double nu);

    IndexVariant variant() const { return variant_; }
    double a() const { return a_; }
    double p() const { return p_; }
    double nu() const { return nu_; }

    double kappa(double t) const;
    /// Inverse of kappa.
    double phi(double s) const;
    /// log of phi(gamma^(nu-p)) evaluated overflow-safely from gamma itself:
    /// polynomial -(a+nu) log gamma, logarithmic -gamma^a.
    double log_phi_at_gamma(double gamma_value) const;
    /// kappa(phi(gamma^(nu-p))) = gamma^(nu-p), the rate value at scale gamma.
    double rate_at_gamma(double gamma_value) const;

    static IndexFunction polynomial(double a, double p, double nu) {
        return {IndexVariant::polynomial, a, p, nu};
    }
    static IndexFunction logarithmic(double a, double p, double nu) {
        return {IndexVariant::logarithmic, a, p, nu};
    }

  private:
    IndexVariant variant_;
    double a_, p_, nu_;
};

/// Per-frequency outcome of the link-condition test
/// kappa(lambda_k / (d gamma_k^nu lambda_+)) <= gamma_k^(nu-p)
///                                           <= kappa(d lambda_k / (gamma_k^nu lambda_+)),
/// evaluated through the equivalent ratio form
/// 1/d <= lambda_k / (gamma_k^nu lambda_+ phi(gamma_k^(nu-p))) <= d.
struct LinkReport {
    double d_given = 1.0;
    double lambda_plus = 1.0;
    std::vector<double> log_ratio;  // index |k| = 0..K; -inf where lambda_k = 0
    std::vector<bool> pass;         // against d_given
    bool all_pass = false;
    double minimal_log_d = 0.0;  // smallest log d making both inequalities hold
    double minimal_d = 1.0;      // exp of the above (inf on overflow or zero lambda)
};

/// Checks the link condition for lambda indexed by |k| = 0..K.  A zero
/// lambda_k fails at that k (no finite d exists); a negative value throws.
LinkReport check_link(std::span<const double> lambda, const IndexFunction& kappa, double d,
                      double lambda_plus);

struct InfeasibleBalanceError : std::runtime_error {
    InfeasibleBalanceError(const std::string& msg, double best_sum_log, long best_k)
        : std::runtime_error(msg), best_log_sum(best_sum_log), best_kstar(best_k) {}
    double best_log_sum;
    long best_kstar;
};

/// Output of the bias/variance balancing
/// triangle^-1 <= sum_{|k|<=k*} gamma_{k*}^(p-nu) / (n phi(gamma_k^(nu-p))) <= triangle.
///
/// The root is resolved on a continuous frequency index (gamma evaluated at
/// real k), because the integer gamma lattice is too coarse at small n: gamma
/// jumps from 1 straight to 1+4pi^2, freezing any integer scan.  kstar is the
/// rounded report; deltastar and the rate come from the continuous root, and
/// triangle is the bracketing constant the discrete sum at kstar achieves.
struct BalanceResult {
    long kstar = 1;
    double kstar_real = 1.0;
    double deltastar = 0.0;        // phi(gamma(t*)^(nu-p))
    double rate = 0.0;             // kappa(deltastar) = gamma(t*)^(nu-p)
    double log_discrete_sum = 0.0; // log S at the integer kstar
    double triangle = 1.0;         // max(S, 1/S), may overflow to inf
    double log_triangle = 0.0;
};

/// Solves the balancing relation for sample size n.  Throws
/// InfeasibleBalanceError when the discrete sum at kstar needs a bracketing
/// constant above triangle_max.
BalanceResult balance(std::size_t n, const IndexFunction& kappa, double triangle_max);

enum class SmoothingCase { polynomial, exponential };

/// Closed-form minimax rate of the W_nu-risk:
/// polynomial  n^(-2(p-nu)/(2(p+a)+1)), exponential  (log n)^(-(p-nu)/a).
/// Requires 0 <= nu < p and a > 0.
double minimax_rate(SmoothingCase smoothing, std::size_t n, double a, double p, double nu);

}  // namespace spectriv::theory
