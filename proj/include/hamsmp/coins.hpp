/*
 * Copyright 2026 the hamsmp authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cassert>
#include <cstdint>

namespace hamsmp {

// Stream-id allocation. Every consumer of shared randomness draws from its
// own stream so that no two subprotocols ever reuse the same coins.
namespace stream_id {
inline constexpr std::uint64_t kGapVectors = 0;  // gap-test z vectors
inline constexpr std::uint64_t kPartition = 1;   // bucket permutation
inline constexpr std::uint64_t kInstance = 2;    // instance generation
// Repetitions of the gap test occupy the high bits so they never collide
// with the base ids.
inline constexpr unsigned kRepShift = 32;
constexpr std::uint64_t with_rep(std::uint64_t base, std::uint32_t rep) {
    return base | (std::uint64_t(rep) << kRepShift);
}
}  // namespace stream_id

namespace detail {
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}
}  // namespace detail

/// Counter-based deterministic coin source. The t-th draw is a pure
/// function of (seed, stream_id, t), so two parties that construct the
/// same stream see identical coins without communicating, and any draw
/// can be replayed by seeking the counter.
class CoinStream {
public:
    CoinStream(std::uint64_t seed, std::uint64_t stream)
        : base_(detail::mix64(seed + detail::kGolden * detail::mix64(stream + detail::kGolden))) {}

    std::uint64_t value_at(std::uint64_t t) const {
        return detail::mix64(base_ + detail::kGolden * (t + 1));
    }

    std::uint64_t next_u64() { return value_at(counter_++); }

    std::uint64_t counter() const { return counter_; }
    void seek(std::uint64_t t) { counter_ = t; }

    /// Unbiased uniform draw in [0, bound) via multiply-shift with
    /// rejection; never reduced modulo, so no modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        assert(bound >= 1);
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Returns 1 with probability exactly 1/denom (integer comparison,
    /// no floating point).
    bool draw_biased_bit(std::uint64_t denom) { return next_below(denom) == 0; }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_real53() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

/// Per-trial seed derivation: mixes the trial index into the base seed so
/// concurrent trials own disjoint coin spaces.
constexpr std::uint64_t derive_trial_seed(std::uint64_t base_seed, std::uint64_t trial) {
    return detail::mix64(base_seed ^ detail::mix64(trial + detail::kGolden));
}

}  // namespace hamsmp
