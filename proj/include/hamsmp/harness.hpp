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

// Monte Carlo experiment driver and analytic-bound calculator. Trials are
// keyed by index (per-trial seeds derived from the base seed), so worker
// scheduling cannot affect any reported number, and identical invocations
// reproduce identical reports byte for byte.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hamsmp/bits.hpp"
#include "hamsmp/bucket_reduce.hpp"
#include "hamsmp/coins.hpp"
#include "hamsmp/gap_test.hpp"
#include "hamsmp/instance.hpp"
#include "hamsmp/protocol.hpp"

namespace hamsmp {

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Wilson score interval at 95% (z = 1.96). errors = 0 pins lo to 0 and
/// errors = trials pins hi to 1.
inline WilsonInterval wilson95(std::uint64_t errors, std::uint64_t trials) {
    const double z = 1.96;
    const double t = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / t;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / t;
    const double center = (p + z2 / (2.0 * t)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
    WilsonInterval w;
    w.lo = std::max(0.0, center - half);
    w.hi = std::min(1.0, center + half);
    if (errors == 0) w.lo = 0.0;
    if (errors == trials) w.hi = 1.0;
    return w;
}

enum class Subprotocol : std::uint8_t { gap = 0, p1 = 1, full = 2 };

constexpr const char* to_string(Subprotocol s) {
    switch (s) {
        case Subprotocol::gap: return "gap";
        case Subprotocol::p1: return "p1";
        default: return "full";
    }
}

/// Counts trials for which `wrong` returns true, splitting indices over
/// worker threads. The count is a sum over fixed per-trial outcomes, so
/// the result does not depend on thread scheduling.
inline std::uint64_t count_over_trials(std::uint64_t trials, unsigned threads,
                                       const std::function<bool(std::uint64_t)>& wrong) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials ? trials : 1));
    if (threads <= 1) {
        std::uint64_t count = 0;
        for (std::uint64_t t = 0; t < trials; ++t) count += wrong(t) ? 1 : 0;
        return count;
    }
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            std::uint64_t count = 0;
            for (std::uint64_t t = w; t < trials; t += threads) count += wrong(t) ? 1 : 0;
            partial[w] = count;
        });
    }
    for (auto& th : pool) th.join();
    std::uint64_t total = 0;
    for (const auto c : partial) total += c;
    return total;
}

// ---------------------------------------------------------------------------
// Analytic bounds

/// Chebyshev bound on the gap test erring at true distance k, using the
/// variance bound sigma^2 <= alpha_k * gamma. Returns nothing off-promise
/// (d < k <= 2d), where the verdict is unconstrained.
inline std::optional<double> gap_error_bound(const GapTestParams& params, std::uint64_t k) {
    if (k > params.d && k <= 2ull * params.d) return std::nullopt;
    const double expected = alpha(k, params.d_eff) * params.gamma;
    const double var_bound = expected;
    const double dist = k <= params.d ? params.m - expected : expected - params.m;
    if (dist <= 0.0) return 1.0;
    return std::min(1.0, var_bound / (dist * dist));
}

/// Analytic error bound for a (subprotocol, k) cell, when one holds.
inline std::optional<double> error_bound_for(Subprotocol sub, std::uint64_t n, std::uint32_t d,
                                             std::uint64_t k, const ProtocolConfig& config) {
    switch (sub) {
        case Subprotocol::full:
            return k <= d ? 0.25 : 0.125;
        case Subprotocol::gap:
            return gap_error_bound(make_params(d, config.gamma, config.reps), k);
        case Subprotocol::p1: {
            const auto plan = detail::plan_branch(n, d, config);
            if (plan.branch == Branch::small_n) return 0.0;  // exact full send
            if (plan.branch == Branch::direct_inner)
                return k <= 2ull * d ? std::optional<double>(0.0) : std::nullopt;
            // reduced branch: exact unless a bucket collision shrinks the
            // distance, which cannot happen for k <= d (parities only cancel)
            if (k <= d) return 0.0;
            if (k <= 2ull * d) return collision_prob_bound(d).value();
            return std::nullopt;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Error estimation

struct ErrorReport {
    std::uint64_t n = 0;
    std::uint32_t d = 0;
    std::uint64_t k = 0;
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
    double rate = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    std::uint64_t seed = 0;
    std::string variant;
    std::optional<double> bound;

    /// Measured rate consistent with the bound once Wilson-95 sampling
    /// slack is granted: rate <= bound + (rate - wilson_lo).
    bool bound_ok() const { return !bound || wilson_lo <= *bound + 1e-12; }
};

/// Runs the chosen protocol on fresh exact-distance-k instances with
/// per-trial seeds derived from base_seed and scores against the exact
/// predicate. Deterministic in (inputs, base_seed).
inline ErrorReport estimate_error(std::uint64_t n, std::uint32_t d, std::uint64_t k,
                                  std::uint64_t trials, std::uint64_t base_seed,
                                  const ProtocolConfig& config,
                                  Subprotocol sub = Subprotocol::full, unsigned threads = 0) {
    if (trials < 1) throw std::invalid_argument("estimate_error: trials >= 1 required");
    if (k > n) throw std::invalid_argument("estimate_error: k > n");
    const bool truth_gt = k > d;
    const auto params = make_params(d, config.gamma, config.reps);
    const auto wrong = [&](std::uint64_t trial) {
        const std::uint64_t seed = derive_trial_seed(base_seed, trial);
        CoinStream inst_coins(seed, stream_id::kInstance);
        const Instance inst = gen_instance(n, k, inst_coins);
        bool said_gt = false;
        switch (sub) {
            case Subprotocol::gap:
                said_gt = amplified_gap_test(inst.x, inst.y, params, seed).verdict ==
                          GapVerdict::Gt2d;
                break;
            case Subprotocol::p1:
                said_gt = run_p1(inst.x, inst.y, d, config, seed).verdict == Answer::GtD;
                break;
            case Subprotocol::full:
                said_gt = run_protocol(inst.x, inst.y, d, config, seed).final == Answer::GtD;
                break;
        }
        return said_gt != truth_gt;
    };
    ErrorReport rep;
    rep.n = n;
    rep.d = d;
    rep.k = k;
    rep.trials = trials;
    rep.errors = count_over_trials(trials, threads, wrong);
    rep.rate = static_cast<double>(rep.errors) / static_cast<double>(trials);
    const auto wi = wilson95(rep.errors, trials);
    rep.wilson_lo = wi.lo;
    rep.wilson_hi = wi.hi;
    rep.seed = base_seed;
    rep.variant = std::string(to_string(sub)) +
                  (sub == Subprotocol::gap ? "" : std::string(":") + to_string(config.inner));
    rep.bound = error_bound_for(sub, n, d, k, config);
    return rep;
}

// ---------------------------------------------------------------------------
// Cost sweep

struct CostRow {
    std::uint32_t d = 0;
    std::uint64_t n = 0;
    std::string variant;
    std::uint64_t bits_per_party = 0;
    double normalized = 0.0;      // (bits - reps*gamma) / (d * log2(max(d, 2)))
    std::uint64_t formula_bits = 0;  // closed-form expectation
    bool formula_ok = false;
};

/// Closed-form per-party cost on the branch selected for (n, d).
inline std::uint64_t cost_formula(std::uint64_t n, std::uint32_t d, const ProtocolConfig& config) {
    const auto plan = detail::plan_branch(n, d, config);
    const std::uint64_t gap_bits = std::uint64_t(config.reps) * config.gamma;
    switch (plan.branch) {
        case Branch::reduced:
            return gap_bits + (plan.variant == InnerVariant::syndrome
                                   ? 2ull * d * FieldContext::min_degree(plan.universe)
                                   : bucket_count(d));
        case Branch::direct_inner:
            return gap_bits + 2ull * d * FieldContext::min_degree(plan.universe);
        default:
            return gap_bits + n;
    }
}

/// Exact per-party bit counts measured from one transcript per d, with
/// the closed form alongside. The normalized column divides the
/// d-dependent part by d * log2(max(d, 2)).
inline std::vector<CostRow> sweep_cost(const std::vector<std::uint32_t>& d_list, std::uint64_t n,
                                       const ProtocolConfig& config, std::uint64_t seed = 1) {
    std::vector<CostRow> rows;
    rows.reserve(d_list.size());
    for (const auto d : d_list) {
        if (d < 1 || d > n) throw std::invalid_argument("sweep_cost: need 1 <= d <= n");
        CoinStream inst_coins(derive_trial_seed(seed, d), stream_id::kInstance);
        const Instance inst = gen_instance(n, std::min<std::uint64_t>(d, n), inst_coins);
        const Transcript t = run_protocol(inst.x, inst.y, d, config, derive_trial_seed(seed, d));
        CostRow row;
        row.d = d;
        row.n = n;
        row.variant = std::string(to_string(t.branch)) + ":" + to_string(config.inner);
        row.bits_per_party = t.alice_bits;
        row.formula_bits = cost_formula(n, d, config);
        row.formula_ok = row.bits_per_party == row.formula_bits && t.alice_bits == t.bob_bits;
        const double denom =
            static_cast<double>(d) * std::log2(static_cast<double>(d < 2 ? 2 : d));
        const std::uint64_t gap_bits = std::uint64_t(config.reps) * config.gamma;
        row.normalized = static_cast<double>(row.bits_per_party - gap_bits) / denom;
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Theory report

struct TheoryRow {
    std::uint64_t k = 0;
    double alpha_k = 0.0;
    double expected_ones = 0.0;  // alpha_k * gamma
    double sigma_bound = 0.0;    // sqrt(alpha_k * gamma)
};

struct TheoryReport {
    std::uint32_t d = 0;
    std::uint32_t d_eff = 0;
    std::uint32_t gamma = 0;
    bool d_eff_substituted = false;  // d = 1 runs with the d = 2 bias
    double q = 0.0;
    double m = 0.0;
    std::vector<TheoryRow> rows;  // k in {0, d, 2d, 2d+1} plus calibration points
    std::uint32_t k_lo = 0;       // cutoff calibration distances
    std::uint32_t k_hi = 0;
    double separation = 0.0;           // E(N_{k_hi}) - E(N_{k_lo})
    double separation_identity = 0.0;  // gamma/2 * t * (1 - t), t = (1 - 1/d)^d (d >= 2)
    double separation_floor = 0.0;     // (3/32) * gamma, valid lower bound for d >= 2
    double cheb_le_side = 0.0;         // P(N_{k_lo} > m) Chebyshev bound
    double cheb_gt_side = 0.0;         // P(N_{k_hi} <= m) Chebyshev bound
    double cheb_total = 0.0;
    bool meets_49_50 = false;  // half-separation >= 10 * max side sigma bound
    Ratio collision_bound;     // (2d - 1) / (16 d)
    double composed_le_budget = 0.25;  // error budget when distance <= d
    double composed_gt_budget = 0.125;  // error budget when distance > d
    double tight_le = 0.0;  // computed bound for distance <= d (P2 is the only error source)
    double tight_gt = 0.0;  // computed bound for distance > d
};

/// Evaluates every closed form behind the gap test for arbitrary gamma.
inline TheoryReport theory_report(std::uint32_t d, std::uint32_t gamma = 20000) {
    const auto params = make_params(d, gamma);
    TheoryReport rep;
    rep.d = d;
    rep.d_eff = params.d_eff;
    rep.gamma = gamma;
    rep.d_eff_substituted = d < 2;
    rep.q = params.q;
    rep.m = params.m;
    rep.k_lo = params.k_lo;
    rep.k_hi = params.k_hi;

    std::vector<std::uint64_t> ks{0, d, 2ull * d, 2ull * d + 1, params.k_lo, params.k_hi};
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (const auto k : ks) {
        TheoryRow row;
        row.k = k;
        row.alpha_k = alpha(k, params.d_eff);
        row.expected_ones = row.alpha_k * gamma;
        row.sigma_bound = std::sqrt(row.expected_ones);
        rep.rows.push_back(row);
    }

    const double g = static_cast<double>(gamma);
    const double e_lo = alpha(params.k_lo, params.d_eff) * g;
    const double e_hi = alpha(params.k_hi, params.d_eff) * g;
    rep.separation = e_hi - e_lo;
    const double t = std::pow(1.0 - 1.0 / static_cast<double>(params.d_eff), params.d_eff);
    rep.separation_identity = 0.5 * g * t * (1.0 - t);
    rep.separation_floor = 3.0 * g / 32.0;

    const double half = rep.m - e_lo;  // = e_hi - m by the midpoint rule
    rep.cheb_le_side = half > 0 ? std::min(1.0, e_lo / (half * half)) : 1.0;
    rep.cheb_gt_side = half > 0 ? std::min(1.0, e_hi / (half * half)) : 1.0;
    rep.cheb_total = std::min(1.0, rep.cheb_le_side + rep.cheb_gt_side);
    const double sigma_max = std::sqrt(e_hi);  // larger of the two side bounds
    rep.meets_49_50 = half >= 10.0 * sigma_max;

    rep.collision_bound = collision_prob_bound(d);
    rep.tight_le = rep.cheb_le_side;
    const auto gt_promise = gap_error_bound(params, 2ull * d + 1);
    rep.tight_gt = std::max(rep.collision_bound.value(), gt_promise.value_or(1.0));
    return rep;
}

// ---------------------------------------------------------------------------
// Distribution check

struct DistCheck {
    bool pass = false;
    double mean = 0.0;
    double alpha_k = 0.0;
    double sigma = 0.0;       // std. dev. of the mean estimator
    double mean_dev = 0.0;    // |mean - alpha_k| in sigma units
    double lag1 = 0.0;        // lag-1 sample autocorrelation
    double lag1_limit = 0.0;  // 4 / sqrt(samples)
    std::uint64_t samples = 0;
};

/// Empirical check of the combined-bit law: generates distance-k
/// instances, forms the c = a xor b bit stream, and tests the mean
/// against alpha_k (4 sigma) plus a lag-1 serial-correlation screen.
inline DistCheck verify_distribution(std::uint32_t d, std::uint64_t k, std::uint32_t gamma,
                                     std::uint64_t trials, std::uint64_t base_seed,
                                     std::uint64_t n = 4096) {
    if (d < 2) throw std::invalid_argument("verify_distribution: d >= 2 required");
    if (k > n) throw std::invalid_argument("verify_distribution: k > n");
    const auto params = make_params(d, gamma);
    std::uint64_t ones = 0;
    std::uint64_t pair11 = 0;  // adjacent (1,1) pairs, per-trial sequences
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        const std::uint64_t seed = derive_trial_seed(base_seed, trial);
        CoinStream inst_coins(seed, stream_id::kInstance);
        const Instance inst = gen_instance(n, k, inst_coins);
        const BitString diff = inst.x ^ inst.y;
        ZVectorStream zs(CoinStream(seed, stream_id::kGapVectors),
                         static_cast<std::uint32_t>(n), params.d_eff);
        bool prev = false;
        for (std::uint32_t i = 0; i < gamma; ++i) {
            const bool c = detail::parity_over(diff, zs.next());
            ones += c;
            if (i > 0 && c && prev) ++pair11;
            prev = c;
        }
    }
    DistCheck chk;
    chk.samples = std::uint64_t(gamma) * trials;
    chk.alpha_k = alpha(k, params.d_eff);
    chk.mean = static_cast<double>(ones) / static_cast<double>(chk.samples);
    chk.sigma = std::sqrt(chk.alpha_k * (1.0 - chk.alpha_k) / static_cast<double>(chk.samples));
    chk.lag1_limit = 4.0 / std::sqrt(static_cast<double>(chk.samples));
    if (k == 0) {
        chk.pass = ones == 0;
        return chk;
    }
    chk.mean_dev = chk.sigma > 0 ? std::abs(chk.mean - chk.alpha_k) / chk.sigma : 0.0;
    const double pairs = static_cast<double>((std::uint64_t(gamma) - 1) * trials);
    const double mean11 = static_cast<double>(pair11) / pairs;
    const double var = chk.mean * (1.0 - chk.mean);
    chk.lag1 = var > 0 ? (mean11 - chk.mean * chk.mean) / var : 0.0;
    chk.pass = chk.mean_dev <= 4.0 && std::abs(chk.lag1) <= chk.lag1_limit;
    return chk;
}

// ---------------------------------------------------------------------------
// CSV emission (schema versioned in a comment line; formatting fixed so
// identical invocations are byte-identical)

namespace detail {
inline std::string fmt(double v, int decimals = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}
}  // namespace detail

inline std::string estimate_csv_header() {
    return "# hamsmp estimate csv v1\nn,d,k,trials,errors,rate,wilson_lo,wilson_hi,seed,variant";
}

inline std::string to_csv(const ErrorReport& r) {
    std::ostringstream os;
    os << r.n << ',' << r.d << ',' << r.k << ',' << r.trials << ',' << r.errors << ','
       << detail::fmt(r.rate) << ',' << detail::fmt(r.wilson_lo) << ',' << detail::fmt(r.wilson_hi)
       << ',' << r.seed << ',' << r.variant;
    return os.str();
}

inline std::string sweep_csv_header() {
    return "# hamsmp sweep-cost csv v1\nd,n,variant,bits_per_party,normalized";
}

inline std::string to_csv(const CostRow& r) {
    std::ostringstream os;
    os << r.d << ',' << r.n << ',' << r.variant << ',' << r.bits_per_party << ','
       << detail::fmt(r.normalized, 4);
    return os.str();
}

inline std::string theory_csv(const TheoryReport& rep) {
    std::ostringstream os;
    os << "# hamsmp theory csv v1\n";
    os << "# d=" << rep.d << " d_eff=" << rep.d_eff << " gamma=" << rep.gamma
       << " q=" << detail::fmt(rep.q, 9) << " m=" << detail::fmt(rep.m, 4) << '\n';
    os << "# separation=" << detail::fmt(rep.separation, 4)
       << " separation_floor=" << detail::fmt(rep.separation_floor, 4)
       << " cheb_le=" << detail::fmt(rep.cheb_le_side, 9)
       << " cheb_gt=" << detail::fmt(rep.cheb_gt_side, 9)
       << " meets_49_50=" << (rep.meets_49_50 ? 1 : 0) << " collision_bound="
       << rep.collision_bound.num << '/' << rep.collision_bound.den << '\n';
    os << "k,alpha_k,expected_ones,sigma_bound\n";
    for (const auto& row : rep.rows)
        os << row.k << ',' << detail::fmt(row.alpha_k, 9) << ','
           << detail::fmt(row.expected_ones, 4) << ',' << detail::fmt(row.sigma_bound, 4) << '\n';
    return os.str();
}

inline std::string theory_table(const TheoryReport& rep) {
    std::ostringstream os;
    char buf[160];
    os << "gap-test theory  d=" << rep.d << "  gamma=" << rep.gamma;
    if (rep.d_eff_substituted)
        os << "  (d_eff=" << rep.d_eff << ": d=1 runs with the d=2 bias)";
    os << '\n';
    std::snprintf(buf, sizeof buf, "  q = %.9f   cutoff m = %.4f   calibration k: %u vs %u\n",
                  rep.q, rep.m, rep.k_lo, rep.k_hi);
    os << buf;
    os << "      k        alpha_k      E(ones)    sigma<=\n";
    for (const auto& row : rep.rows) {
        std::snprintf(buf, sizeof buf, "  %5llu  %12.9f  %11.4f  %9.4f\n",
                      static_cast<unsigned long long>(row.k), row.alpha_k, row.expected_ones,
                      row.sigma_bound);
        os << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "  separation = %.4f  (identity %.4f, floor 3*gamma/32 = %.4f)\n",
                  rep.separation, rep.separation_identity, rep.separation_floor);
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "  Chebyshev per side: le %.9f, gt %.9f, total %.9f  49/50 target: %s\n",
                  rep.cheb_le_side, rep.cheb_gt_side, rep.cheb_total,
                  rep.meets_49_50 ? "met" : "not met (10-sigma criterion)");
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "  collision bound (2d-1)/(16d) = %llu/%llu = %.6f\n",
                  static_cast<unsigned long long>(rep.collision_bound.num),
                  static_cast<unsigned long long>(rep.collision_bound.den),
                  rep.collision_bound.value());
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "  composed budgets: <=d err %.3f (computed %.6f), >d err %.3f (computed %.6f)\n",
                  rep.composed_le_budget, rep.tight_le, rep.composed_gt_budget, rep.tight_gt);
    os << buf;
    return os.str();
}

}  // namespace hamsmp
