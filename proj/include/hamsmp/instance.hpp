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

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hamsmp/bits.hpp"
#include "hamsmp/coins.hpp"

namespace hamsmp {

struct Instance {
    BitString x;
    BitString y;
    std::uint64_t n = 0;
    std::uint64_t d = 0;  // threshold, filled by the caller that knows it
    std::uint64_t k = 0;  // true distance |x xor y|
};

/// Test-instance factory: x uniform over {0,1}^n, y differs from x in a
/// uniformly chosen size-k position set, so hamming_distance(x, y) = k
/// exactly.
inline Instance gen_instance(std::uint64_t n, std::uint64_t k, CoinStream& coins) {
    if (k > n) throw std::invalid_argument("gen_instance: k > n");
    Instance inst;
    inst.n = n;
    inst.k = k;
    inst.x = BitString::random(n, coins);
    inst.y = inst.x;
    if (k > 0) {
        // partial Fisher-Yates: the first k entries are a uniform k-subset
        std::vector<std::uint32_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0u);
        for (std::uint64_t j = 0; j < k; ++j) {
            const std::uint64_t r = j + coins.next_below(n - j);
            std::swap(idx[j], idx[r]);
            inst.y.flip(idx[j]);
        }
    }
    return inst;
}

}  // namespace hamsmp
