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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hamsmp/coins.hpp"

namespace hamsmp {

/// Fixed-length binary word packed into 64-bit words, position 0 first.
/// Length is immutable after construction; bits past the length are kept
/// zero so word-level scans need no masking.
class BitString {
public:
    BitString() = default;

    explicit BitString(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    static BitString random(std::size_t len, CoinStream& coins) {
        BitString s(len);
        for (auto& w : s.words_) w = coins.next_u64();
        s.mask_tail();
        return s;
    }

    static BitString from_string(std::string_view text) {
        BitString s(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '1') {
                s.set(i, true);
            } else if (text[i] != '0') {
                throw std::invalid_argument("BitString::from_string: expected '0'/'1'");
            }
        }
        return s;
    }

    std::size_t size() const { return len_; }

    bool get(std::size_t i) const {
        assert(i < len_);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool bit) {
        assert(i < len_);
        const std::uint64_t mask = 1ull << (i & 63);
        if (bit) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }

    void flip(std::size_t i) {
        assert(i < len_);
        words_[i >> 6] ^= 1ull << (i & 63);
    }

    std::uint64_t weight() const {
        std::uint64_t w = 0;
        for (auto v : words_) w += static_cast<std::uint64_t>(std::popcount(v));
        return w;
    }

    bool parity() const {
        std::uint64_t acc = 0;
        for (auto v : words_) acc ^= v;
        return std::popcount(acc) & 1u;
    }

    BitString operator^(const BitString& other) const {
        if (len_ != other.len_) throw std::invalid_argument("BitString xor: length mismatch");
        BitString out(len_);
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] ^ other.words_[i];
        return out;
    }

    BitString complemented() const {
        BitString out(len_);
        for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
        out.mask_tail();
        return out;
    }

    std::span<const std::uint64_t> words() const { return words_; }

    bool operator==(const BitString&) const = default;

    std::string to_string() const {
        std::string out(len_, '0');
        for (std::size_t i = 0; i < len_; ++i)
            if (get(i)) out[i] = '1';
        return out;
    }

    /// Calls fn(position) for every set bit, in increasing position order.
    template <typename Fn>
    void for_each_set_bit(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w != 0) {
                const int b = std::countr_zero(w);
                fn(wi * 64 + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

private:
    void mask_tail() {
        if (len_ & 63) words_.back() &= (~0ull) >> (64 - (len_ & 63));
    }

    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

inline std::uint64_t hamming_distance(const BitString& x, const BitString& y) {
    if (x.size() != y.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    const auto xw = x.words();
    const auto yw = y.words();
    std::uint64_t dist = 0;
    for (std::size_t i = 0; i < xw.size(); ++i)
        dist += static_cast<std::uint64_t>(std::popcount(xw[i] ^ yw[i]));
    return dist;
}

/// HAM(x, y) = 1 iff |x xor y| > d. The exact oracle every protocol is
/// scored against.
inline bool ham_predicate(const BitString& x, const BitString& y, std::uint64_t d) {
    if (d < 1 || d > x.size()) throw std::invalid_argument("ham_predicate: need 1 <= d <= n");
    return hamming_distance(x, y) > d;
}

}  // namespace hamsmp
