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

namespace hamsmp {

// Answer encoding follows the predicate orientation: LeD <-> HAM = 0,
// GtD <-> HAM = 1.
enum class Answer : std::uint8_t { LeD = 0, GtD = 1 };

// Verdict of the gap (promise) test, which separates distance <= d from
// distance > 2d.
enum class GapVerdict : std::uint8_t { LeD = 0, Gt2d = 1 };

constexpr const char* to_string(Answer a) { return a == Answer::LeD ? "LE_d" : "GT_d"; }
constexpr const char* to_string(GapVerdict v) { return v == GapVerdict::LeD ? "LE_d" : "GT_2d"; }

}  // namespace hamsmp
