// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#include "spectriv/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spectriv {

double gamma_weight(int k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k);
    return 1.0 + w * w;
}

FourierSeq::FourierSeq(int support_bound, bool hermitian)
    : support_(support_bound), hermitian_(hermitian) {
    if (support_bound < 0) throw std::invalid_argument("FourierSeq: negative support bound");
    coef_.assign(static_cast<std::size_t>(2 * support_bound + 1), {0.0, 0.0});
}

void FourierSeq::set_hermitian(bool flag) {
    if (flag && !is_hermitian()) {
        throw std::invalid_argument("FourierSeq: hermitian flag set on non-hermitian coefficients");
    }
    hermitian_ = flag;
}

void FourierSeq::set_coeff(int k, std::complex<double> value) {
    if (k < -support_ || k > support_) {
        throw std::out_of_range("FourierSeq: frequency outside support bound");
    }
    coef_[static_cast<std::size_t>(k + support_)] = value;
}

void FourierSeq::set_hermitian_pair(int k, std::complex<double> value) {
    if (k < 0) throw std::invalid_argument("FourierSeq: hermitian pair expects k >= 0");
    if (k == 0) {
        set_coeff(0, {value.real(), 0.0});
        return;
    }
    set_coeff(k, value);
    set_coeff(-k, std::conj(value));
}

bool FourierSeq::is_hermitian(double tol) const {
    if (std::abs(coeff(0).imag()) > tol) return false;
    for (int k = 1; k <= support_; ++k) {
        if (std::abs(coeff(-k) - std::conj(coeff(k))) > tol) return false;
    }
    return true;
}

FourierSeq operator+(const FourierSeq& a, const FourierSeq& b) {
    FourierSeq out(std::max(a.support(), b.support()), a.hermitian() && b.hermitian());
    for (int k = -out.support(); k <= out.support(); ++k) {
        out.set_coeff(k, a.coeff(k) + b.coeff(k));
    }
    return out;
}

FourierSeq operator-(const FourierSeq& a, const FourierSeq& b) {
    FourierSeq out(std::max(a.support(), b.support()), a.hermitian() && b.hermitian());
    for (int k = -out.support(); k <= out.support(); ++k) {
        out.set_coeff(k, a.coeff(k) - b.coeff(k));
    }
    return out;
}

FourierSeq operator*(std::complex<double> s, const FourierSeq& a) {
    FourierSeq out(a.support(), a.hermitian() && s.imag() == 0.0);
    for (int k = -a.support(); k <= a.support(); ++k) out.set_coeff(k, s * a.coeff(k));
    return out;
}

void validate(const SobolevParams& params) {
    if (!(params.nu >= 0.0) || !(params.nu < params.p)) {
        throw std::invalid_argument("SobolevParams: requires 0 <= nu < p");
    }
    if (!(params.rho > 0.0)) throw std::invalid_argument("SobolevParams: requires rho > 0");
}

double sobolev_norm_sq(const FourierSeq& f, double nu) {
    double total = 0.0;
    for (int k = -f.support(); k <= f.support(); ++k) {
        const double m = std::norm(f.coeff(k));
        if (m != 0.0) total += std::pow(gamma_weight(k), nu) * m;
    }
    return total;
}

std::complex<double> inner(const FourierSeq& f, const FourierSeq& g) {
    const int bound = std::max(f.support(), g.support());
    std::complex<double> total{0.0, 0.0};
    for (int k = -bound; k <= bound; ++k) total += f.coeff(k) * std::conj(g.coeff(k));
    return total;
}

std::vector<std::complex<double>> synthesize(const FourierSeq& f, std::span<const double> grid) {
    std::vector<std::complex<double>> out;
    out.reserve(grid.size());
    for (double t : grid) {
        if (!(t >= 0.0 && t <= 1.0)) {
            throw std::domain_error("synthesize: grid point outside [0,1]");
        }
        std::complex<double> v{0.0, 0.0};
        for (int k = -f.support(); k <= f.support(); ++k) {
            const double phase = 2.0 * std::numbers::pi * k * t;
            v += f.coeff(k) * std::complex<double>{std::cos(phase), std::sin(phase)};
        }
        out.push_back(v);
    }
    return out;
}

std::vector<double> uniform_grid(std::size_t m) {
    std::vector<double> grid(m);
    for (std::size_t j = 0; j < m; ++j) grid[j] = static_cast<double>(j) / static_cast<double>(m);
    return grid;
}

FourierSeq analyze(std::span<const double> values, int max_freq) {
    const std::size_t m = values.size();
    if (max_freq < 0) throw std::invalid_argument("analyze: negative support bound");
    if (m < static_cast<std::size_t>(2 * max_freq + 1)) {
        throw std::invalid_argument("analyze: grid too coarse for requested support (aliasing)");
    }
    // <f, phi_k> ~ (1/m) sum_j f(j/m) exp(-2 pi i k j / m).  Real input, so
    // compute k >= 0 and mirror the conjugate; the result is exactly hermitian.
    FourierSeq out(max_freq, true);
    for (int k = 0; k <= max_freq; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < m; ++j) {
            const double phase =
                -2.0 * std::numbers::pi * k * static_cast<double>(j) / static_cast<double>(m);
            acc += values[j] * std::complex<double>{std::cos(phase), std::sin(phase)};
        }
        acc /= static_cast<double>(m);
        out.set_hermitian_pair(k, acc);
    }
    return out;
}

}  // namespace spectriv
