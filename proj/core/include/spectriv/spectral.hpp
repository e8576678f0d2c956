// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <span>
#include <vector>

namespace spectriv {

/// Weight attached to frequency k in the periodic Sobolev norms:
/// gamma(k) = 1 + (2*pi*k)^2.  Even in k, gamma(0) = 1.
double gamma_weight(int k);

/// Finitely supported two-sided Fourier coefficient sequence.
///
/// Coefficients live on k in {-K, ..., K} and are implicitly zero outside.
/// Frequencies are stored two-sided rather than folded; `hermitian` is a
/// checked flag asserting coeff(-k) == conj(coeff(k)), i.e. the synthesized
/// function is real-valued.
class FourierSeq {
  public:
    FourierSeq() : support_(0), coef_(1, {0.0, 0.0}) {}
    explicit FourierSeq(int support_bound, bool hermitian = false);

    int support() const { return support_; }
    bool hermitian() const { return hermitian_; }
    void set_hermitian(bool flag);

    /// Coefficient at frequency k; zero outside the support.
    std::complex<double> coeff(int k) const {
        if (k < -support_ || k > support_) return {0.0, 0.0};
        return coef_[static_cast<std::size_t>(k + support_)];
    }

    void set_coeff(int k, std::complex<double> value);

    /// Writes value at +k and its conjugate at -k (k = 0 forces a real value).
    void set_hermitian_pair(int k, std::complex<double> value);

    /// True if coeff(-k) == conj(coeff(k)) for all k, within tol.
    bool is_hermitian(double tol = 1e-12) const;

    friend FourierSeq operator+(const FourierSeq& a, const FourierSeq& b);
    friend FourierSeq operator-(const FourierSeq& a, const FourierSeq& b);
    friend FourierSeq operator*(std::complex<double> s, const FourierSeq& a);

  private:
    int support_;
    bool hermitian_ = false;
    std::vector<std::complex<double>> coef_;  // index k + support_
};

/// Smoothness/ball parameters of the periodic Sobolev class: the risk index
/// nu, the smoothness p of the slope and the ball radius rho.
struct SobolevParams {
    double nu = 0.0;
    double p = 2.0;
    double rho = 1.0;
};

/// Throws std::invalid_argument unless 0 <= nu < p and rho > 0.
void validate(const SobolevParams& params);

/// Sum over the support of gamma(k)^nu * |f_k|^2.  At nu = 0 this is the
/// squared L2 norm (Parseval).  Negative nu is allowed.
double sobolev_norm_sq(const FourierSeq& f, double nu);

/// Hermitian inner product sum_k f_k * conj(g_k).
std::complex<double> inner(const FourierSeq& f, const FourierSeq& g);

/// Evaluates sum_k f_k exp(2*pi*i*k*t) at each grid point.
/// Throws std::domain_error for grid points outside [0,1].
std::vector<std::complex<double>> synthesize(const FourierSeq& f, std::span<const double> grid);

/// Uniform grid {0, 1/m, ..., (m-1)/m}.
std::vector<double> uniform_grid(std::size_t m);

/// DFT approximation of the Fourier coefficients <f, phi_k> for |k| <= max_freq
/// from samples of f on the uniform grid of size values.size().  Exact for
/// band-limited input; O(m^-2) quadrature error for generic smooth input.
/// Throws std::invalid_argument when values.size() < 2*max_freq + 1 (aliasing).
FourierSeq analyze(std::span<const double> values, int max_freq);

}  // namespace spectriv
