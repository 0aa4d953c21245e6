// Copyright 2026 The helpful Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "helpful/types.hpp"

namespace helpful {

// Deterministic synthetic review corpus with a planted, tunable dependency:
// the probability that a review collects at least one helpful vote rises
// monotonically with the author's latent quality and with the review's image
// count, with mixing strength helpful_signal in [0, 1]. At helpful_signal = 0
// the labels are independent coin flips, untied to every feature.
//
// Pure function of (n, seed, helpful_signal): identical arguments produce a
// byte-identical corpus.
Dataset generate_synthetic(std::int64_t n, std::uint64_t seed, double helpful_signal);

}  // namespace helpful
