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

#include <cstddef>

namespace helpful::parallel {

// Fixed work-chunk size for all reductions. Floating-point sums are always
// accumulated sequentially inside a chunk and chunk partials are combined in
// chunk order, so results are bitwise identical for any thread count —
// including the serial reference kernels, which walk the same chunks.
inline constexpr std::size_t kChunk = 64;

inline std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

// Process-wide thread count, default 1 (serial). The OpenMP kernels honor it;
// they fall back to plain loops when OpenMP is compiled out.
void set_threads(int n);
int threads();

}  // namespace helpful::parallel
