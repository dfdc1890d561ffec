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

// Exact SMP protocol on the reduced universe under the promise that the
// two strings differ in at most 2d positions. Each party sends the 2d odd
// power sums of its string over GF(2^w) (a shortened narrow-sense BCH
// syndrome with designed distance 4d+1, 2d*w bits per party); the referee
// XORs the messages and decodes the weight of the difference pattern with
// Berlekamp-Massey plus Chien search. Within the promise the answer is
// exact; failures only arise off-promise and map to GT_d.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hamsmp/bits.hpp"
#include "hamsmp/gf2m.hpp"
#include "hamsmp/verdict.hpp"

namespace hamsmp {

struct SyndromeMessage {
    std::uint32_t d = 0;
    std::uint32_t w = 0;
    // odd power sums S_j for j = 1, 3, ..., 4d-1, in that order
    std::vector<std::uint32_t> elems;

    std::uint64_t bit_count() const { return std::uint64_t(elems.size()) * w; }
};

/// The 2d odd power sums S_j(s) = sum over set positions i of g^{i*j}.
/// Linear over GF(2): syndrome(x) xor syndrome(y) = syndrome(x xor y).
inline SyndromeMessage syndrome_message(const BitString& s, const FieldContext& ctx,
                                        std::uint32_t d) {
    if (s.size() > ctx.m())
        throw std::invalid_argument("syndrome_message: string longer than field universe");
    if (d < 1) throw std::invalid_argument("syndrome_message: d >= 1 required");
    SyndromeMessage msg;
    msg.d = d;
    msg.w = ctx.w();
    msg.elems.assign(2 * d, 0);
    s.for_each_set_bit([&](std::size_t i) {
        for (std::uint32_t t = 0; t < 2 * d; ++t) {
            const std::uint64_t j = 2ull * t + 1;
            msg.elems[t] ^= ctx.pow_g(static_cast<std::uint64_t>(i) * j);
        }
    });
    return msg;
}

inline SyndromeMessage xor_syndromes(const SyndromeMessage& a, const SyndromeMessage& b) {
    if (a.d != b.d || a.w != b.w || a.elems.size() != b.elems.size())
        throw std::invalid_argument("xor_syndromes: message shape violates protocol");
    SyndromeMessage out = a;
    for (std::size_t i = 0; i < out.elems.size(); ++i) out.elems[i] ^= b.elems[i];
    return out;
}

struct DecodeResult {
    bool ok = false;           // false = FAIL (a value, not a fault)
    std::uint32_t weight = 0;  // |e| when ok
};

/// Recovers |e| from the syndrome of e = a xor b, exactly, whenever
/// |e| <= 2d. Even-index syndromes are reconstructed by squaring
/// (S_{2j} = S_j^2 in characteristic 2), Berlekamp-Massey finds the error
/// locator, and a Chien search over the whole multiplicative group checks
/// that the locator has exactly deg(locator) roots, all at positions < m,
/// whose recomputed syndromes match the input. Any check failing returns
/// FAIL; with |e| <= 2d all checks pass and weight = |e|.
inline DecodeResult decode_weight(const SyndromeMessage& syn, const FieldContext& ctx,
                                  std::uint32_t d) {
    if (syn.elems.size() != 2 * d || syn.w != ctx.w())
        throw std::invalid_argument("decode_weight: message shape violates protocol");
    const std::uint32_t two_t = 4 * d;  // number of syndromes used by the decoder

    // S[1..4d]; odd entries from the message, even by squaring.
    std::vector<std::uint32_t> S(two_t + 1, 0);
    bool all_zero = true;
    for (std::uint32_t t = 0; t < 2 * d; ++t) {
        S[2 * t + 1] = syn.elems[t];
        if (syn.elems[t] != 0) all_zero = false;
    }
    if (all_zero) return DecodeResult{true, 0};
    for (std::uint32_t j = 2; j <= two_t; j += 2) S[j] = ctx.sqr(S[j / 2]);

    // Berlekamp-Massey for the shortest LFSR generating S_1..S_{4d}.
    std::vector<std::uint32_t> C{1};  // connection polynomial (error locator)
    std::vector<std::uint32_t> B{1};
    std::uint32_t L = 0;
    std::uint32_t shift = 1;  // x^shift multiplies B on each update
    std::uint32_t b = 1;      // last nonzero discrepancy
    for (std::uint32_t i = 0; i < two_t; ++i) {
        std::uint32_t disc = S[i + 1];
        for (std::uint32_t j = 1; j <= L && j < C.size(); ++j)
            if (i + 1 >= j) disc ^= ctx.mul(C[j], S[i + 1 - j]);
        if (disc == 0) {
            ++shift;
            continue;
        }
        const std::uint32_t coef = ctx.div(disc, b);
        if (2 * L <= i) {
            std::vector<std::uint32_t> T = C;
            if (C.size() < B.size() + shift) C.resize(B.size() + shift, 0);
            for (std::size_t j = 0; j < B.size(); ++j) C[j + shift] ^= ctx.mul(coef, B[j]);
            L = i + 1 - L;
            B = std::move(T);
            b = disc;
            shift = 1;
        } else {
            if (C.size() < B.size() + shift) C.resize(B.size() + shift, 0);
            for (std::size_t j = 0; j < B.size(); ++j) C[j + shift] ^= ctx.mul(coef, B[j]);
            ++shift;
        }
    }
    if (L == 0 || L > 2 * d) return DecodeResult{false, 0};
    if (C.size() < L + 1 || C[L] == 0) return DecodeResult{false, 0};
    C.resize(L + 1);

    // Chien search: the locator built from error set E is
    // prod_{i in E} (1 - g^i x), so its roots are x = g^{-i}.
    std::vector<std::uint32_t> term(C);
    std::vector<std::uint32_t> step(L + 1);
    for (std::uint32_t j = 0; j <= L; ++j)
        step[j] = ctx.pow_g((ctx.order() - j % ctx.order()) % ctx.order());
    std::vector<std::uint32_t> roots;
    for (std::uint32_t e = 0; e < ctx.order(); ++e) {
        std::uint32_t val = 0;
        for (std::uint32_t j = 0; j <= L; ++j) {
            val ^= term[j];
            term[j] = ctx.mul(term[j], step[j]);
        }
        if (val == 0) {
            if (roots.size() == L) return DecodeResult{false, 0};  // too many roots
            roots.push_back(e);
        }
    }
    if (roots.size() != L) return DecodeResult{false, 0};
    for (const auto e : roots)
        if (e >= ctx.m()) return DecodeResult{false, 0};

    // Recompute the transmitted syndromes from the located positions.
    for (std::uint32_t t = 0; t < 2 * d; ++t) {
        const std::uint64_t j = 2ull * t + 1;
        std::uint32_t acc = 0;
        for (const auto e : roots) acc ^= ctx.pow_g(static_cast<std::uint64_t>(e) * j);
        if (acc != syn.elems[t]) return DecodeResult{false, 0};
    }
    return DecodeResult{true, L};
}

/// Referee of the inner protocol: XOR the two parties' syndromes, decode,
/// and answer LE_d iff the decoded weight is at most d. FAIL maps to GT_d
/// (failures only arise off-promise, where the gap test already answers
/// GT with high probability).
inline Answer inner_decide(const SyndromeMessage& a, const SyndromeMessage& b,
                           const FieldContext& ctx, std::uint32_t d) {
    if (a.d != d || b.d != d)
        throw std::invalid_argument("inner_decide: message built for a different threshold");
    const SyndromeMessage syn = xor_syndromes(a, b);
    const DecodeResult res = decode_weight(syn, ctx, d);
    return (res.ok && res.weight <= d) ? Answer::LeD : Answer::GtD;
}

/// Full-send baseline: each party transmits its whole string (m bits) and
/// the referee evaluates the predicate exactly. Correctness oracle for the
/// decoder and a pluggable inner-protocol variant.
inline Answer inner_reference(const BitString& a, const BitString& b, std::uint32_t d) {
    return hamming_distance(a, b) > d ? Answer::GtD : Answer::LeD;
}

}  // namespace hamsmp
