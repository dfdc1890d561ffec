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
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "hamsmp/coins.hpp"

using namespace hamsmp;

TEST_CASE("replaying a stream reproduces identical values") {
    CoinStream a(123456789, stream_id::kGapVectors);
    CoinStream b(123456789, stream_id::kGapVectors);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());

    a.seek(17);
    CHECK(a.next_u64() == a.value_at(17));
    CHECK(a.value_at(17) == b.value_at(17));
}

TEST_CASE("same coordinates give the same biased bit") {
    CoinStream a(5, 0);
    CoinStream b(5, 0);
    for (int i = 0; i < 100; ++i) REQUIRE(a.draw_biased_bit(8) == b.draw_biased_bit(8));
}

TEST_CASE("distinct stream ids decorrelate") {
    CoinStream a(42, 0);
    CoinStream b(42, 1);
    int agree = 0;
    const int n = 4096;
    for (int i = 0; i < n; ++i) agree += (a.next_u64() & 1u) == (b.next_u64() & 1u);
    // agreement of independent fair bits: n/2 +- 4 sqrt(n)/2
    CHECK(std::abs(agree - n / 2) < 2 * std::sqrt(static_cast<double>(n)) * 2);
}

TEST_CASE("biased bit with denom=1 is always 1") {
    CoinStream coins(9, 9);
    for (int i = 0; i < 64; ++i) REQUIRE(coins.draw_biased_bit(1));
}

TEST_CASE("biased bit frequency matches 1/denom") {
    CoinStream coins(31337, 2);
    const int n = 1'000'000;
    int ones = 0;
    for (int i = 0; i < n; ++i) ones += coins.draw_biased_bit(4);
    const double freq = static_cast<double>(ones) / n;
    CHECK(std::abs(freq - 0.25) <= 0.002);
}

TEST_CASE("next_below stays in range and is roughly uniform") {
    CoinStream coins(77, 3);
    const std::uint64_t bound = 10;
    std::vector<int> hist(bound, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto v = coins.next_below(bound);
        REQUIRE(v < bound);
        ++hist[v];
    }
    for (const auto h : hist) {
        // each bin: n/10 +- 5 sigma, sigma = sqrt(n p (1-p)) ~ 94.9
        CHECK(std::abs(h - n / 10) < 5 * 95);
    }
    CHECK(coins.next_below(1) == 0);
}

TEST_CASE("trial seeds are distinct") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t t = 0; t < 10000; ++t) seen.insert(derive_trial_seed(1, t));
    CHECK(seen.size() == 10000);
}
