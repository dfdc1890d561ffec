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

// Composed SMP protocol for HAM_{n,d}. Each party concatenates two
// messages: P1 (bucket reduction + exact inner protocol, or the inner
// protocol directly when 16*d^2 >= n) and P2 (the amplified gap test).
// The referee answers "distance <= d" iff both subprotocols do.

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hamsmp/bits.hpp"
#include "hamsmp/bucket_reduce.hpp"
#include "hamsmp/coins.hpp"
#include "hamsmp/gap_test.hpp"
#include "hamsmp/gf2m.hpp"
#include "hamsmp/syndrome_code.hpp"
#include "hamsmp/verdict.hpp"

namespace hamsmp {

enum class InnerVariant : std::uint8_t { syndrome = 0, reference = 1 };
enum class Branch : std::uint8_t { reduced = 0, direct_inner = 1, small_n = 2 };

constexpr const char* to_string(InnerVariant v) {
    return v == InnerVariant::syndrome ? "syndrome" : "reference";
}
constexpr const char* to_string(Branch b) {
    switch (b) {
        case Branch::reduced: return "reduced";
        case Branch::direct_inner: return "direct-inner";
        default: return "small-n";
    }
}

struct ProtocolConfig {
    std::uint32_t gamma = 20000;
    std::uint32_t reps = 1;  // odd
    InnerVariant inner = InnerVariant::syndrome;
};

struct Transcript {
    std::uint64_t alice_bits = 0;
    std::uint64_t bob_bits = 0;
    Answer r1 = Answer::LeD;      // P1 verdict
    GapVerdict r2 = GapVerdict::LeD;  // P2 verdict
    Answer final = Answer::LeD;
    std::uint64_t seed = 0;
    Branch branch = Branch::reduced;
    std::uint64_t n = 0;
    std::uint32_t d = 0;
};

/// AND rule: announce "distance <= d" iff both subprotocols say so.
constexpr Answer referee_combine(Answer r1, GapVerdict r2) {
    return (r1 == Answer::LeD && r2 == GapVerdict::LeD) ? Answer::LeD : Answer::GtD;
}

struct Cost {
    std::uint64_t alice = 0;
    std::uint64_t bob = 0;
    std::uint64_t total = 0;
};

inline Cost cost_of(const Transcript& t) { return Cost{t.alice_bits, t.bob_bits, t.alice_bits + t.bob_bits}; }

namespace detail {

struct BranchPlan {
    Branch branch = Branch::reduced;
    InnerVariant variant = InnerVariant::syndrome;
    std::uint32_t universe = 0;  // field universe size for the syndrome variants
};

/// Branch rule: reduce when 16*d^2 < n; otherwise run the inner protocol
/// directly on the raw strings, falling back to a plain full send when
/// that is no larger than the syndromes (n <= 2*d*w). The fallback also
/// keeps the designed distance 4d+1 inside the field's group order, which
/// direct syndromes need.
inline BranchPlan plan_branch(std::uint64_t n, std::uint32_t d, const ProtocolConfig& config) {
    BranchPlan plan;
    if (bucket_count(d) < n) {
        plan.branch = Branch::reduced;
        plan.variant = config.inner;
        plan.universe = static_cast<std::uint32_t>(bucket_count(d));
        return plan;
    }
    const auto m_ctx = static_cast<std::uint32_t>(n < 2 ? 2 : n);
    const std::uint32_t w = FieldContext::min_degree(m_ctx);
    if (config.inner == InnerVariant::syndrome && n > 2ull * d * w) {
        plan.branch = Branch::direct_inner;
        plan.variant = InnerVariant::syndrome;
        plan.universe = m_ctx;
    } else {
        plan.branch = Branch::small_n;
        plan.variant = InnerVariant::reference;
        plan.universe = 0;
    }
    return plan;
}

inline void validate_inputs(const BitString& x, const BitString& y, std::uint32_t d) {
    if (x.size() != y.size() || x.size() < 1)
        throw std::invalid_argument("protocol: need equal nonempty inputs");
    if (d < 1 || d > x.size()) throw std::invalid_argument("protocol: need 1 <= d <= n");
}

}  // namespace detail

/// Everything one party sends: the P1 message (syndromes, or a plain
/// string for the reference variants) followed by reps gap-test messages.
struct ProtocolMessages {
    Branch branch = Branch::reduced;
    InnerVariant variant = InnerVariant::syndrome;
    SyndromeMessage syn;   // variant == syndrome
    BitString plain;       // variant == reference: reduced string or raw input
    std::vector<GapMessage> gap;

    std::uint64_t bit_count() const {
        std::uint64_t bits = variant == InnerVariant::syndrome ? syn.bit_count() : plain.size();
        for (const auto& g : gap) bits += g.bits.size();
        return bits;
    }
};

/// One party's full message as a pure function of (own input, public
/// coins); never sees the other input.
inline ProtocolMessages build_party_messages(const BitString& input, std::uint32_t d,
                                             const ProtocolConfig& config, std::uint64_t seed) {
    if (d < 1 || d > input.size()) throw std::invalid_argument("protocol: need 1 <= d <= n");
    const auto plan = detail::plan_branch(input.size(), d, config);
    ProtocolMessages out;
    out.branch = plan.branch;
    out.variant = plan.variant;
    if (plan.branch == Branch::reduced) {
        const auto part = make_partition(pad_length(input.size(), d), d,
                                         CoinStream(seed, stream_id::kPartition));
        const BitString reduced = part.reduce(input);
        if (plan.variant == InnerVariant::syndrome) {
            const FieldContext ctx(plan.universe);
            out.syn = syndrome_message(reduced, ctx, d);
        } else {
            out.plain = reduced;
        }
    } else if (plan.branch == Branch::direct_inner) {
        const FieldContext ctx(plan.universe);
        out.syn = syndrome_message(input, ctx, d);
    } else {
        out.plain = input;
    }
    const auto params = make_params(d, config.gamma, config.reps);
    out.gap.reserve(config.reps);
    for (std::uint32_t rep = 0; rep < config.reps; ++rep)
        out.gap.push_back(gap_message(
            input, params, CoinStream(seed, stream_id::with_rep(stream_id::kGapVectors, rep))));
    return out;
}

/// Both parties' messages in one pass over the shared coins: the
/// partition is built once and each z vector is sampled once.
/// Bit-identical to two build_party_messages calls.
inline std::pair<ProtocolMessages, ProtocolMessages> build_message_pair(
    const BitString& x, const BitString& y, std::uint32_t d, const ProtocolConfig& config,
    std::uint64_t seed) {
    detail::validate_inputs(x, y, d);
    const auto plan = detail::plan_branch(x.size(), d, config);
    std::pair<ProtocolMessages, ProtocolMessages> out;
    out.first.branch = out.second.branch = plan.branch;
    out.first.variant = out.second.variant = plan.variant;
    if (plan.branch == Branch::reduced) {
        const auto part =
            make_partition(pad_length(x.size(), d), d, CoinStream(seed, stream_id::kPartition));
        const BitString ra = part.reduce(x);
        const BitString rb = part.reduce(y);
        if (plan.variant == InnerVariant::syndrome) {
            const FieldContext ctx(plan.universe);
            out.first.syn = syndrome_message(ra, ctx, d);
            out.second.syn = syndrome_message(rb, ctx, d);
        } else {
            out.first.plain = ra;
            out.second.plain = rb;
        }
    } else if (plan.branch == Branch::direct_inner) {
        const FieldContext ctx(plan.universe);
        out.first.syn = syndrome_message(x, ctx, d);
        out.second.syn = syndrome_message(y, ctx, d);
    } else {
        out.first.plain = x;
        out.second.plain = y;
    }
    const auto params = make_params(d, config.gamma, config.reps);
    for (std::uint32_t rep = 0; rep < config.reps; ++rep) {
        auto [ga, gb] = gap_message_pair(
            x, y, params, CoinStream(seed, stream_id::with_rep(stream_id::kGapVectors, rep)));
        out.first.gap.push_back(std::move(ga));
        out.second.gap.push_back(std::move(gb));
    }
    return out;
}

/// The referee's side: a pure function of the two messages plus the
/// public data (n, d, config, seed). Recomputes the branch plan, judges
/// P1 and P2, and combines them with the AND rule.
inline Transcript referee_decide(const ProtocolMessages& ma, const ProtocolMessages& mb,
                                 std::uint64_t n, std::uint32_t d, const ProtocolConfig& config,
                                 std::uint64_t seed) {
    const auto plan = detail::plan_branch(n, d, config);
    if (ma.branch != plan.branch || mb.branch != plan.branch || ma.variant != plan.variant ||
        mb.variant != plan.variant || ma.gap.size() != config.reps || mb.gap.size() != config.reps)
        throw std::invalid_argument("referee: message bundle violates protocol");

    Transcript t;
    t.seed = seed;
    t.branch = plan.branch;
    t.n = n;
    t.d = d;

    if (plan.variant == InnerVariant::syndrome) {
        const FieldContext ctx(plan.universe);
        t.r1 = inner_decide(ma.syn, mb.syn, ctx, d);
    } else {
        t.r1 = inner_reference(ma.plain, mb.plain, d);
    }

    const auto params = make_params(d, config.gamma, config.reps);
    std::uint32_t gt_votes = 0;
    for (std::uint32_t rep = 0; rep < config.reps; ++rep)
        if (gap_referee(ma.gap[rep], mb.gap[rep], params) == GapVerdict::Gt2d) ++gt_votes;
    t.r2 = 2 * gt_votes > config.reps ? GapVerdict::Gt2d : GapVerdict::LeD;

    t.final = referee_combine(t.r1, t.r2);
    t.alice_bits = ma.bit_count();
    t.bob_bits = mb.bit_count();
    return t;
}

/// Full protocol run: build both messages, hand them to the referee.
inline Transcript run_protocol(const BitString& x, const BitString& y, std::uint32_t d,
                               const ProtocolConfig& config, std::uint64_t seed) {
    detail::validate_inputs(x, y, d);
    const auto [ma, mb] = build_message_pair(x, y, d, config, seed);
    return referee_decide(ma, mb, x.size(), d, config, seed);
}

struct P1Result {
    Answer verdict = Answer::LeD;
    std::uint64_t bits_per_party = 0;
    Branch branch = Branch::reduced;
};

/// Subprotocol P1 alone (reduction + inner protocol, branch rule as in
/// the full run).
inline P1Result run_p1(const BitString& x, const BitString& y, std::uint32_t d,
                       const ProtocolConfig& config, std::uint64_t seed) {
    detail::validate_inputs(x, y, d);
    const auto plan = detail::plan_branch(x.size(), d, config);
    P1Result res;
    res.branch = plan.branch;
    if (plan.branch == Branch::reduced) {
        const auto part =
            make_partition(pad_length(x.size(), d), d, CoinStream(seed, stream_id::kPartition));
        const BitString ra = part.reduce(x);
        const BitString rb = part.reduce(y);
        if (plan.variant == InnerVariant::syndrome) {
            const FieldContext ctx(plan.universe);
            res.verdict = inner_decide(syndrome_message(ra, ctx, d), syndrome_message(rb, ctx, d),
                                       ctx, d);
            res.bits_per_party = 2ull * d * ctx.w();
        } else {
            res.verdict = inner_reference(ra, rb, d);
            res.bits_per_party = ra.size();
        }
    } else if (plan.branch == Branch::direct_inner) {
        const FieldContext ctx(plan.universe);
        res.verdict =
            inner_decide(syndrome_message(x, ctx, d), syndrome_message(y, ctx, d), ctx, d);
        res.bits_per_party = 2ull * d * ctx.w();
    } else {
        res.verdict = inner_reference(x, y, d);
        res.bits_per_party = x.size();
    }
    return res;
}

// ---------------------------------------------------------------------------
// Serialization. Versioned, field order fixed.

namespace detail {
inline std::string bits_to_hex(const BitString& s) {
    static const char* kHex = "0123456789abcdef";
    std::string out;
    out.reserve(s.words().size() * 16);
    for (const auto w : s.words())
        for (int shift = 60; shift >= 0; shift -= 4) out.push_back(kHex[(w >> shift) & 0xF]);
    return out;
}

inline BitString bits_from_hex(std::size_t len, const std::string& hex) {
    BitString out(len);
    const std::size_t words = (len + 63) / 64;
    if (hex.size() != words * 16) throw std::invalid_argument("bits_from_hex: bad payload size");
    for (std::size_t i = 0; i < len; ++i) {
        const std::size_t word = i / 64;
        const int shift = static_cast<int>(i % 64);
        const char c = hex[word * 16 + static_cast<std::size_t>(15 - shift / 4)];
        const int v = c <= '9' ? c - '0' : c - 'a' + 10;
        if ((v >> (shift % 4)) & 1) out.set(i, true);
    }
    return out;
}
}  // namespace detail

/// Transcript CSV record, schema v1, field order fixed.
inline std::string transcript_csv_header() {
    return "schema,seed,branch,n,d,alice_bits,bob_bits,r1,r2,final";
}

inline std::string to_csv(const Transcript& t) {
    std::ostringstream os;
    os << "v1," << t.seed << ',' << to_string(t.branch) << ',' << t.n << ',' << t.d << ','
       << t.alice_bits << ',' << t.bob_bits << ',' << to_string(t.r1) << ',' << to_string(t.r2)
       << ',' << to_string(t.final);
    return os.str();
}

/// One party's message bundle as text (version 1). The referee can be run
/// from two such strings plus the public data alone.
inline std::string serialize_messages(const ProtocolMessages& m) {
    std::ostringstream os;
    os << "hamsmp-msgs-v1 branch=" << static_cast<int>(m.branch)
       << " variant=" << static_cast<int>(m.variant) << " reps=" << m.gap.size() << '\n';
    if (m.variant == InnerVariant::syndrome) {
        os << "syn d=" << m.syn.d << " w=" << m.syn.w << " elems=";
        for (std::size_t i = 0; i < m.syn.elems.size(); ++i) {
            if (i) os << ',';
            os << m.syn.elems[i];
        }
        os << '\n';
    } else {
        os << "plain len=" << m.plain.size() << " hex=" << detail::bits_to_hex(m.plain) << '\n';
    }
    for (const auto& g : m.gap)
        os << "gap len=" << g.bits.size() << " hex=" << detail::bits_to_hex(g.bits) << '\n';
    return os.str();
}

inline ProtocolMessages parse_messages(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("hamsmp-msgs-v1 ", 0) != 0)
        throw std::invalid_argument("parse_messages: bad header");
    ProtocolMessages m;
    {
        int branch = 0;
        int variant = 0;
        std::size_t reps = 0;
        if (std::sscanf(line.c_str(), "hamsmp-msgs-v1 branch=%d variant=%d reps=%zu", &branch,
                        &variant, &reps) != 3)
            throw std::invalid_argument("parse_messages: bad header fields");
        m.branch = static_cast<Branch>(branch);
        m.variant = static_cast<InnerVariant>(variant);
        m.gap.reserve(reps);
    }
    while (std::getline(is, line)) {
        if (line.rfind("syn ", 0) == 0) {
            unsigned d = 0;
            unsigned w = 0;
            int consumed = 0;
            if (std::sscanf(line.c_str(), "syn d=%u w=%u elems=%n", &d, &w, &consumed) != 2)
                throw std::invalid_argument("parse_messages: bad syn line");
            m.syn.d = d;
            m.syn.w = w;
            std::istringstream es(line.substr(static_cast<std::size_t>(consumed)));
            std::string tok;
            while (std::getline(es, tok, ','))
                m.syn.elems.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        } else if (line.rfind("plain ", 0) == 0 || line.rfind("gap ", 0) == 0) {
            const bool is_gap = line[0] == 'g';
            std::size_t len = 0;
            int consumed = 0;
            const char* fmt = is_gap ? "gap len=%zu hex=%n" : "plain len=%zu hex=%n";
            if (std::sscanf(line.c_str(), fmt, &len, &consumed) != 1)
                throw std::invalid_argument("parse_messages: bad bit-string line");
            auto bits = detail::bits_from_hex(len, line.substr(static_cast<std::size_t>(consumed)));
            if (is_gap) {
                m.gap.push_back(GapMessage{std::move(bits)});
            } else {
                m.plain = std::move(bits);
            }
        } else if (!line.empty()) {
            throw std::invalid_argument("parse_messages: unknown line");
        }
    }
    return m;
}

}  // namespace hamsmp
