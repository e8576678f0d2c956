// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "spectriv/rng.hpp"
#include "spectriv/spectral.hpp"

namespace spectriv::dgp {

enum class DecayVariant { polynomial, exponential };

/// Eigenvalue decay family for the joint spectrum of (X, W):
/// polynomial  lambda_k ~ |k|^(-2a), exponential  lambda_k ~ exp(-|k|^(2a)).
/// x_factor and w_decay are the base profile constants: x_k = x_factor * lambda_k
/// and w_k = (1 + |k|)^(-w_decay).
struct DecayFamily {
    DecayVariant variant = DecayVariant::polynomial;
    double a = 1.0;
    double x_factor = 2.0;
    double w_decay = 1.0;
};

/// Per-frequency second moments of the joint law of (X, W), symmetric in k.
///
/// var_x[k] = Var<X,phi_k>, var_w[k] = Var<W,phi_k>, cov[k] = E[conj(X_k) W_k];
/// the instrument eigenvalues lambda_k = cov_k^2 / w_k are derived.
class SpectrumSpec {
  public:
    SpectrumSpec(std::vector<double> var_x, std::vector<double> var_w, std::vector<double> cov);

    int support() const { return static_cast<int>(var_x_.size()) - 1; }
    double x(int k) const { return var_x_[index(k)]; }
    double w(int k) const { return var_w_[index(k)]; }
    double c(int k) const { return cov_[index(k)]; }
    double lambda(int k) const {
        const double ck = c(k);
        return ck * ck / w(k);
    }
    /// 1 v max_k lambda_k.
    double lambda_plus() const;
    /// 1 v sup_k lambda_k / w_k (the instrument bound tau).
    double tau() const;
    std::vector<double> lambda_all() const;  // index |k| = 0..K

  private:
    std::size_t index(int k) const;
    std::vector<double> var_x_, var_w_, cov_;
};

/// Moment-class constants the generated Gaussian process satisfies.
struct MomentClassSpec {
    int m = 8;
    double eta = 1.0;     // uniform bound on normalized m-th moments
    double tau = 1.0;     // 1 v sup lambda_k / w_k
    double Lambda = 1.0;  // bound on E||X||^2 and E||W||^2
    double d = 1.0;       // link-condition constant
};

/// m-th absolute moment of a standard normal, 2^(m/2) Gamma((m+1)/2) / sqrt(pi).
double normal_abs_moment(int m);

/// Moment-class constants for the Gaussian sampler on this spectrum.  The
/// normalized coefficients are standard (real or circular complex) normals,
/// so eta is the standard-normal absolute moment, which dominates the
/// Rayleigh moment Gamma(m/2 + 1) of the complex case.
MomentClassSpec moment_class_of(const SpectrumSpec& spec, int m, double d = 1.0);

/// Spectrum with the requested eigenvalue decay.  Uses w_k = (1+|k|)^(-w_decay)
/// (summable and slower than the cross-covariance), c_k = sqrt(lambda_k w_k)
/// and x_k = x_factor * lambda_k, so lambda_k < x_k strictly for x_factor > 1.
SpectrumSpec from_decay(const DecayFamily& family, int support_bound);

/// Same variances, but cross-covariance raised to the Cauchy-Schwarz boundary
/// c_k = sqrt(x_k w_k): W determines X exactly (degenerate joint Gaussian).
SpectrumSpec with_perfect_correlation(const SpectrumSpec& spec);

/// Hermitian slope with coefficients b * gamma(k)^(-(p+1)/2), scaled so that
/// the squared W_p norm equals fill * rho.
FourierSeq make_slope(const SobolevParams& params, int support_bound, double fill = 1.0);

/// One draw of the coefficient pair (X, W): independent across k >= 0, real
/// bivariate normal at k = 0, circular complex bivariate normal for k > 0
/// with the conjugate mirrored to -k.  Both sequences carry the hermitian flag.
std::pair<FourierSeq, FourierSeq> sample_pair(const SpectrumSpec& spec, Rng& rng);

/// An n-sample of (Y_i, X_i coefficients, W_i coefficients).
struct Sample {
    double sigma = 0.0;
    double endo = 0.0;
    std::vector<double> y;
    std::vector<FourierSeq> xc;
    std::vector<FourierSeq> wc;
    std::optional<SpectrumSpec> spec;

    std::size_t n() const { return y.size(); }
    int support() const { return xc.empty() ? 0 : xc.front().support(); }
};

/// Variance of <slope, X - Wtilde> under the spec, where Wtilde is the optimal
/// linear instrument with weights c_k / w_k.  Equals sum_k |beta_k|^2 (x_k - lambda_k).
double prediction_error_variance(const SpectrumSpec& spec, const FourierSeq& slope);

/// Simulates Y_i = <slope, X_i> + sigma U_i with
/// U_i = sqrt(1-endo) eps_i + sqrt(endo) Z_i, where Z_i standardizes
/// <slope, X_i - Wtilde_i>.  Var U = 1 and E[U W_k] = 0 for every k, while X
/// is genuinely endogenous for endo > 0.  Record i is generated from the
/// stream (seed, i), so generation is order-independent.
/// Throws std::invalid_argument when endo > 0 but Var<slope, X - Wtilde> = 0.
Sample simulate_sample(const SpectrumSpec& spec, const FourierSeq& slope, double sigma,
                       std::size_t n, double endo, std::uint64_t seed);

}  // namespace spectriv::dgp
