/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ergo {

/// SplitMix-style 64-bit finalizer; stateless avalanche mix.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Odd increment of the SplitMix sequence.
inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// Seed for one chunk, a pure function of (master_seed, chunk_index): the
/// chunk_index-th output of a SplitMix sequence started at master_seed. The
/// gamma step keeps nearby master seeds from ever sharing chunk seeds, which
/// a plain master xor chunk mix does not.
constexpr std::uint64_t derive_chunk_seed(std::uint64_t master_seed,
                                          std::uint64_t chunk_index) noexcept {
    return mix64(master_seed + (chunk_index + 1) * kGoldenGamma);
}

/// Deterministic random stream: a fully specified 64-bit generator plus
/// hand-rolled uniform and Gaussian mappings, so that a seed pins the exact
/// value sequence independent of the standard library's distribution
/// implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform phase in [0, 2*pi).
    double uniform_angle() { return 2.0 * std::numbers::pi * uniform01(); }

    /// Standard normal via Box-Muller; generates pairs, caches the second.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        cached_ = radius * std::sin(angle);
        have_cached_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 gen_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace ergo
