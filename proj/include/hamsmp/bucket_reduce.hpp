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

// Randomized reduction from n-bit inputs to 16*d^2-bit inputs: a shared
// uniform permutation splits the (zero-padded) positions evenly into
// 16*d^2 buckets and each party sends per-bucket parities. If no bucket
// receives two differing positions, the reduced distance equals the
// original distance.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hamsmp/bits.hpp"
#include "hamsmp/coins.hpp"
#include "hamsmp/ratio.hpp"

namespace hamsmp {

constexpr std::uint64_t bucket_count(std::uint64_t d) { return 16 * d * d; }

/// Smallest multiple of 16*d^2 that is >= n. Both parties pad their
/// strings with zeros up to this length, which preserves the distance.
inline std::uint64_t pad_length(std::uint64_t n, std::uint64_t d) {
    if (n < 1 || d < 1) throw std::invalid_argument("pad_length: n >= 1, d >= 1 required");
    const std::uint64_t b = bucket_count(d);
    return (n + b - 1) / b * b;
}

/// Random even partition of [0, n_padded) into equal-size buckets, built
/// from one unbiased shuffle of the shared coin stream. Position
/// perm[j] belongs to bucket j / bucket_size.
class BucketPartition {
public:
    BucketPartition(std::uint64_t n_padded, std::uint64_t buckets, CoinStream coins)
        : n_padded_(n_padded), buckets_(buckets) {
        if (buckets == 0 || n_padded % buckets != 0)
            throw std::invalid_argument("BucketPartition: bucket count must divide n_padded");
        size_ = n_padded / buckets;
        perm_.resize(n_padded);
        std::iota(perm_.begin(), perm_.end(), 0u);
        for (std::uint64_t i = n_padded - 1; i > 0; --i) {
            const std::uint64_t j = coins.next_below(i + 1);
            std::swap(perm_[i], perm_[j]);
        }
        bucket_of_.resize(n_padded);
        for (std::uint64_t j = 0; j < n_padded; ++j)
            bucket_of_[perm_[j]] = static_cast<std::uint32_t>(j / size_);
    }

    std::uint64_t n_padded() const { return n_padded_; }
    std::uint64_t buckets() const { return buckets_; }
    std::uint64_t bucket_size() const { return size_; }
    std::uint32_t bucket_of(std::uint64_t pos) const { return bucket_of_[pos]; }
    const std::vector<std::uint32_t>& perm() const { return perm_; }

    /// Per-bucket parity of x (positions past x.size() count as zero).
    /// Computed from one party's own string only.
    BitString reduce(const BitString& x) const {
        if (x.size() > n_padded_)
            throw std::invalid_argument("BucketPartition::reduce: input longer than padding");
        BitString out(buckets_);
        std::uint64_t j = 0;
        for (std::uint64_t b = 0; b < buckets_; ++b) {
            std::uint64_t acc = 0;
            for (std::uint64_t t = 0; t < size_; ++t, ++j) {
                const std::uint64_t pos = perm_[j];
                if (pos < x.size()) acc ^= static_cast<std::uint64_t>(x.get(pos));
            }
            out.set(b, acc & 1u);
        }
        return out;
    }

private:
    std::uint64_t n_padded_;
    std::uint64_t buckets_;
    std::uint64_t size_ = 1;
    std::vector<std::uint32_t> perm_;
    std::vector<std::uint32_t> bucket_of_;
};

/// Partition with the protocol's bucket count 16*d^2.
inline BucketPartition make_partition(std::uint64_t n_padded, std::uint64_t d, CoinStream coins) {
    return BucketPartition(n_padded, bucket_count(d), coins);
}

inline BitString reduce_string(const BitString& x, const BucketPartition& part) {
    return part.reduce(x);
}

/// Analysis helper (not part of any message): true iff no bucket holds
/// two or more positions where x and y differ. When true, the reduced
/// strings preserve the exact distance.
inline bool collision_free(const BitString& x, const BitString& y, const BucketPartition& part) {
    if (x.size() != y.size()) throw std::invalid_argument("collision_free: length mismatch");
    std::vector<std::uint8_t> seen(part.buckets(), 0);
    const auto xw = x.words();
    const auto yw = y.words();
    for (std::size_t wi = 0; wi < xw.size(); ++wi) {
        std::uint64_t w = xw[wi] ^ yw[wi];
        while (w != 0) {
            const auto pos = wi * 64 + static_cast<std::size_t>(std::countr_zero(w));
            w &= w - 1;
            const std::uint32_t b = part.bucket_of(pos);
            if (seen[b]++) return false;
        }
    }
    return true;
}

/// Union bound on a colliding pair among 2d balls in 16*d^2 buckets:
/// C(2d, 2) / (16 d^2) = (2d - 1) / (16 d), always below 1/8.
inline Ratio collision_prob_bound(std::uint64_t d) {
    if (d < 1) throw std::invalid_argument("collision_prob_bound: d >= 1 required");
    return Ratio{2 * d - 1, 16 * d};
}

}  // namespace hamsmp
