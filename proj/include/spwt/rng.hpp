// SPDX-License-Identifier: Apache-2.0
//
// spwt: secure precise wireless transmission and jamming simulation library
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace spwt
{

// SplitMix64 finalizer. Bijective on 64-bit words, full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Folds a path of stream identifiers into a substream key. The fold is
// order-sensitive, so (a,b) and (b,a) land in unrelated streams.
constexpr std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept
{
    std::uint64_t k = mix64(seed + 0x9e3779b97f4a7c15ULL);
    for (std::uint64_t p : path)
        k = mix64(k ^ mix64(p + 0xd1b54a32d192ed03ULL));
    return k;
}

// Counter-based uniform generator (SplitMix64). Construction is free, so every
// (seed, scheme, point, allocation, symbol) tuple gets its own stream and the
// draw sequence never depends on thread scheduling.
class RngStream
{
  public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t key) noexcept : state_(key) {}

    RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept
        : state_(derive_key(seed, path))
    {
    }

    std::uint64_t next_u64() noexcept
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    std::uint64_t operator()() noexcept { return next_u64(); }
    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~0ULL; }

    // Uniform in [0,1) with 53-bit resolution
    double uniform01() noexcept { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased integer in [0,n); rejection keeps the distribution exact. n >= 1.
    std::uint64_t below(std::uint64_t n) noexcept
    {
        const std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
        for (;;)
        {
            const std::uint64_t r = next_u64();
            if (r >= threshold)
                return r % n;
        }
    }

    // Standard normal pair via Box-Muller; u1 is shifted into (0,1] so the log
    // stays finite.
    void normal_pair(double &z0, double &z1) noexcept
    {
        const double u1 = (double(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = double(next_u64() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        z0 = r * std::cos(phi);
        z1 = r * std::sin(phi);
    }

    // Circularly symmetric complex Gaussian with E|z|^2 = 1
    std::complex<double> gaussian_c1() noexcept
    {
        double z0 = 0.0, z1 = 0.0;
        normal_pair(z0, z1);
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        return {z0 * inv_sqrt2, z1 * inv_sqrt2};
    }

  private:
    std::uint64_t state_;
};

} // namespace spwt
