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

#include "hamsmp/bits.hpp"
#include "hamsmp/bucket_reduce.hpp"
#include "hamsmp/coins.hpp"
#include "hamsmp/gap_test.hpp"
#include "hamsmp/gf2m.hpp"
#include "hamsmp/harness.hpp"
#include "hamsmp/instance.hpp"
#include "hamsmp/protocol.hpp"
#include "hamsmp/ratio.hpp"
#include "hamsmp/syndrome_code.hpp"
#include "hamsmp/verdict.hpp"
