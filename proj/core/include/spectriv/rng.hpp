// Copyright (c) 2026 The spectriv authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace spectriv {

/// Counter-based pseudo-random generator (splitmix64 core).
///
/// Streams are derived by hashing a tuple of identifiers (master seed,
/// sample size, replication index, record index, ...), so any record of any
/// replication can be generated independently of execution order.  This is
/// what makes the Monte Carlo driver deterministic under an arbitrary
/// thread count.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform draw in (0,1]; safe as a log() argument.
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; the second deviate is cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double phi = 2.0 * std::numbers::pi * uniform();
        cached_ = r * std::sin(phi);
        have_cached_ = true;
        return r * std::cos(phi);
    }

    /// Circularly symmetric complex normal with E|z|^2 = 1.
    std::complex<double> complex_normal() {
        const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
        const double re = normal() * inv_sqrt2;
        const double im = normal() * inv_sqrt2;
        return {re, im};
    }

  private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
}  // namespace detail

/// Hash-combine stream identifiers into an Rng seed.
inline std::uint64_t derive_stream(std::uint64_t key, std::uint64_t id) {
    return detail::mix64(key ^ (id + 0x9e3779b97f4a7c15ull + (key << 6) + (key >> 2)));
}

inline std::uint64_t derive_stream(std::uint64_t key, std::uint64_t a, std::uint64_t b) {
    return derive_stream(derive_stream(key, a), b);
}

inline std::uint64_t derive_stream(std::uint64_t key, std::uint64_t a, std::uint64_t b,
                                   std::uint64_t c) {
    return derive_stream(derive_stream(key, a, b), c);
}

}  // namespace spectriv
