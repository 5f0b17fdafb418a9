// Copyright 2026 The orbitalsim Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Reproducible random streams.
 *
 * A stream is identified by (master_seed, stream_id). The engine is
 * std::mt19937_64, whose output sequence is fixed by the C++ standard, seeded
 * with a SplitMix64 mix of both identifiers. Uniform doubles are built from
 * the top 53 bits of each draw instead of std::uniform_real_distribution,
 * whose algorithm is implementation-defined. The same pair therefore yields
 * the same draws with any conforming standard library.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace orbitalsim {

namespace detail {
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}
} // namespace detail

class RngStream {
  public:
    explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_id = 0)
        : master_seed_(master_seed), stream_id_(stream_id),
          engine_(derive_seed(master_seed, stream_id)) {}

    [[nodiscard]] std::uint64_t master_seed() const noexcept {
        return master_seed_;
    }
    [[nodiscard]] std::uint64_t stream_id() const noexcept {
        return stream_id_;
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (one value per call, no caching).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    static constexpr std::uint64_t derive_seed(std::uint64_t master,
                                               std::uint64_t stream) noexcept {
        return detail::splitmix64(detail::splitmix64(master) ^
                                  detail::splitmix64(~stream));
    }

  private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

} // namespace orbitalsim
