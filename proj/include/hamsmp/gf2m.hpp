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

// GF(2^w) arithmetic over log/antilog tables, w in 2..24. Elements are
// polynomial-basis bit masks; the generator g is the class of x, which is
// primitive for every modulus in the table below (verified at table build).

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hamsmp {

namespace detail {
// Primitive polynomials over GF(2), degree -> coefficient mask including
// the x^w term. Version 1 of this table; entries are load-bearing for the
// wire format and must not change.
inline constexpr std::uint32_t kPrimitivePoly[25] = {
    0,         0,         0x7,       0xB,       0x13,      0x25,     0x43,      0x89,
    0x11D,     0x211,     0x409,     0x805,     0x1053,    0x201B,   0x4443,    0x8003,
    0x1100B,   0x20009,   0x40081,   0x80027,   0x100009,  0x200005, 0x400003,  0x800021,
    0x1000087,
};
}  // namespace detail

/// Field context for the syndrome protocol on a universe of m positions:
/// the smallest GF(2^w) whose multiplicative group covers all positions,
/// i.e. 2^w - 1 >= m.
class FieldContext {
public:
    static constexpr std::uint32_t kMinDegree = 2;
    static constexpr std::uint32_t kMaxDegree = 24;

    static std::uint32_t min_degree(std::uint32_t m) {
        if (m < 2 || m > (1u << kMaxDegree) - 1)
            throw std::invalid_argument("FieldContext: m out of [2, 2^24 - 1]");
        std::uint32_t w = kMinDegree;
        while (((1u << w) - 1) < m) ++w;
        return w;
    }

    static std::uint32_t primitive_poly(std::uint32_t w) {
        if (w < kMinDegree || w > kMaxDegree)
            throw std::invalid_argument("FieldContext: degree out of [2, 24]");
        return detail::kPrimitivePoly[w];
    }

    explicit FieldContext(std::uint32_t m) : m_(m), w_(min_degree(m)) {
        modulus_ = primitive_poly(w_);
        order_ = (1u << w_) - 1;
        // antilog duplicated so products of two logs index without a mod
        alog_.assign(2 * order_, 0);
        log_.assign(std::size_t(order_) + 1, 0xFFFFFFFFu);
        std::uint32_t cur = 1;
        for (std::uint32_t i = 0; i < order_; ++i) {
            if (cur == 1 && i > 0)
                throw std::logic_error("FieldContext: generator order too small (bad modulus)");
            if (log_[cur] != 0xFFFFFFFFu)
                throw std::logic_error("FieldContext: duplicate power (bad modulus)");
            alog_[i] = cur;
            alog_[i + order_] = cur;
            log_[cur] = i;
            cur <<= 1;
            if (cur & (1u << w_)) cur ^= modulus_;
        }
        if (cur != 1) throw std::logic_error("FieldContext: generator does not cycle back to 1");
    }

    std::uint32_t m() const { return m_; }
    std::uint32_t w() const { return w_; }
    std::uint32_t modulus() const { return modulus_; }
    std::uint32_t order() const { return order_; }

    static std::uint32_t add(std::uint32_t a, std::uint32_t b) { return a ^ b; }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return alog_[log_[a] + log_[b]];
    }

    std::uint32_t sqr(std::uint32_t a) const { return mul(a, a); }

    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::invalid_argument("FieldContext::inv(0)");
        return alog_[order_ - log_[a]];
    }

    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

    /// g^e for arbitrary e >= 0 (reduced mod the group order).
    std::uint32_t pow_g(std::uint64_t e) const { return alog_[e % order_]; }

    /// Discrete log base g; a must be nonzero.
    std::uint32_t log_g(std::uint32_t a) const {
        if (a == 0) throw std::invalid_argument("FieldContext::log_g(0)");
        return log_[a];
    }

private:
    std::uint32_t m_;
    std::uint32_t w_;
    std::uint32_t modulus_ = 0;
    std::uint32_t order_ = 0;
    std::vector<std::uint32_t> alog_;
    std::vector<std::uint32_t> log_;
};

/// build_context per the module contract: deterministic in m.
inline FieldContext build_context(std::uint32_t m) { return FieldContext(m); }

}  // namespace hamsmp
