// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "spectriv/rng.hpp"
#include "spectriv/spectral.hpp"

using namespace spectriv;
using cd = std::complex<double>;

namespace {

FourierSeq random_hermitian(int bound, Rng& rng) {
    FourierSeq f(bound, true);
    for (int k = 0; k <= bound; ++k) {
        if (k == 0) {
            f.set_hermitian_pair(0, rng.normal());
        } else {
            f.set_hermitian_pair(k, cd{rng.normal(), rng.normal()});
        }
    }
    return f;
}

}  // namespace

TEST_CASE("gamma weight values and symmetry") {
    CHECK(gamma_weight(0) == doctest::Approx(1.0));
    CHECK(gamma_weight(1) == doctest::Approx(40.4784176044).epsilon(1e-10));
    CHECK(gamma_weight(-3) == gamma_weight(3));
    for (int k = -20; k <= 19; ++k) {
        CHECK(gamma_weight(k) == gamma_weight(-k));
        CHECK(gamma_weight(std::abs(k) + 1) > gamma_weight(std::abs(k)));
    }
}

TEST_CASE("sobolev norm on simple sequences") {
    FourierSeq delta0(0, true);
    delta0.set_hermitian_pair(0, 1.0);
    CHECK(sobolev_norm_sq(delta0, 0.0) == doctest::Approx(1.0));
    CHECK(sobolev_norm_sq(delta0, 3.7) == doctest::Approx(1.0));
    CHECK(sobolev_norm_sq(delta0, -2.0) == doctest::Approx(1.0));

    FourierSeq cosine(1, true);
    cosine.set_hermitian_pair(1, 0.5);
    CHECK(sobolev_norm_sq(cosine, 0.0) == doctest::Approx(0.5));
    CHECK(sobolev_norm_sq(cosine, 1.0) == doctest::Approx((1.0 + 4.0 * M_PI * M_PI) / 2.0));
}

TEST_CASE("parseval: nu=0 norm equals inner(f,f)") {
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const auto f = random_hermitian(1 + int(rng.next_u64() % 6), rng);
        CHECK(sobolev_norm_sq(f, 0.0) == doctest::Approx(inner(f, f).real()).epsilon(1e-12));
    }
}

TEST_CASE("sobolev norm monotone in nu when k=0 is absent") {
    Rng rng(12);
    for (int trial = 0; trial < 25; ++trial) {
        auto f = random_hermitian(1 + int(rng.next_u64() % 5), rng);
        f.set_hermitian_pair(0, 0.0);
        const double lo = rng.uniform() * 2.0 - 1.0;
        const double hi = lo + rng.uniform() * 2.0;
        CHECK(sobolev_norm_sq(f, lo) <= sobolev_norm_sq(f, hi) * (1 + 1e-12));
    }
}

TEST_CASE("synthesize constants and cosines") {
    FourierSeq c1(0, true);
    c1.set_hermitian_pair(0, 1.0);
    const double t = 0.37;
    CHECK(synthesize(c1, std::vector<double>{t})[0].real() == doctest::Approx(1.0));

    FourierSeq cosine(1, true);
    cosine.set_hermitian_pair(1, 0.5);
    CHECK(synthesize(cosine, std::vector<double>{0.0})[0].real() == doctest::Approx(1.0));
    CHECK(synthesize(cosine, std::vector<double>{0.25})[0].real() ==
          doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(synthesize(cosine, std::vector<double>{1.5}), std::domain_error);
    CHECK_THROWS_AS(synthesize(cosine, std::vector<double>{-0.1}), std::domain_error);
}

TEST_CASE("analyze recovers constants and cosines") {
    {
        std::vector<double> ones(16, 1.0);
        const auto f = analyze(ones, 2);
        CHECK(f.coeff(0).real() == doctest::Approx(1.0));
        for (int k = 1; k <= 2; ++k) CHECK(std::abs(f.coeff(k)) < 1e-12);
    }
    {
        const auto grid = uniform_grid(64);
        std::vector<double> vals(64);
        for (std::size_t j = 0; j < 64; ++j) vals[j] = std::cos(2.0 * M_PI * grid[j]);
        const auto f = analyze(vals, 1);
        CHECK(std::abs(f.coeff(1) - cd{0.5, 0.0}) < 1e-10);
        CHECK(std::abs(f.coeff(-1) - cd{0.5, 0.0}) < 1e-10);
    }
    CHECK_THROWS_AS(analyze(std::vector<double>(4, 0.0), 2), std::invalid_argument);
}

TEST_CASE("synthesize/analyze round-trip on band-limited sequences") {
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const int bound = 1 + int(rng.next_u64() % 8);
        const auto f = random_hermitian(bound, rng);
        const auto grid = uniform_grid(std::max(256, 4 * bound));
        const auto vals = synthesize(f, grid);
        std::vector<double> real_vals(vals.size());
        for (std::size_t j = 0; j < vals.size(); ++j) {
            // hermitian input synthesizes to a real function
            CHECK(std::abs(vals[j].imag()) < 1e-10);
            real_vals[j] = vals[j].real();
        }
        const auto back = analyze(real_vals, bound);
        for (int k = -bound; k <= bound; ++k) {
            CHECK(std::abs(back.coeff(k) - f.coeff(k)) < 1e-10);
        }
    }
}

TEST_CASE("inner products") {
    FourierSeq a(0, true), b(1, false), c(1, false);
    a.set_hermitian_pair(0, 1.0);
    CHECK(inner(a, a).real() == doctest::Approx(1.0));
    b.set_coeff(1, 1.0);
    c.set_coeff(-1, 1.0);
    CHECK(std::abs(inner(b, c)) == doctest::Approx(0.0));
}

TEST_CASE("inner equals grid quadrature of the synthesized product") {
    Rng rng(14);
    for (int trial = 0; trial < 6; ++trial) {
        const int bound = 1 + int(rng.next_u64() % 4);
        const auto f = random_hermitian(bound, rng);
        const auto g = random_hermitian(bound, rng);
        const std::size_t m = 512;
        const auto grid = uniform_grid(m);
        const auto fv = synthesize(f, grid);
        const auto gv = synthesize(g, grid);
        cd quad{0.0, 0.0};
        for (std::size_t j = 0; j < m; ++j) quad += fv[j] * std::conj(gv[j]);
        quad /= double(m);
        CHECK(std::abs(inner(f, g) - quad) < 1e-8);
    }
}

TEST_CASE("hermitian flag is checked") {
    FourierSeq f(1, false);
    f.set_coeff(1, cd{1.0, 2.0});
    CHECK_THROWS_AS(f.set_hermitian(true), std::invalid_argument);
    f.set_coeff(-1, cd{1.0, -2.0});
    CHECK_NOTHROW(f.set_hermitian(true));
    CHECK(f.hermitian());
}

TEST_CASE("sobolev params validation") {
    CHECK_NOTHROW(validate(SobolevParams{0.0, 2.0, 1.0}));
    CHECK_THROWS_AS(validate(SobolevParams{2.0, 2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(SobolevParams{0.0, 2.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(SobolevParams{-0.5, 2.0, 1.0}), std::invalid_argument);
}
