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

#include <span>
#include <string>
#include <vector>

#include "helpful/features.hpp"
#include "helpful/types.hpp"

namespace helpful {

// Name under which the binary target joins the correlation map.
inline constexpr const char* kTargetName = "helpful";

// Sample Pearson correlation. Throws LengthMismatch on unequal or < 2
// lengths, ZeroVariance when either input is constant (the result would be
// undefined; callers that tolerate it flag the entry instead).
double pearson(std::span<const double> x, std::span<const double> y);

// Symmetric correlation map over all feature columns plus the target.
// Undefined entries (a constant column anywhere in the pair) are flagged
// rather than reported as 0.
struct CorrelationMatrix {
  std::vector<std::string> names;
  std::vector<double> r;              // n x n, NaN where not defined
  std::vector<std::uint8_t> defined;  // n x n

  std::size_t size() const { return names.size(); }
  double at(std::size_t i, std::size_t j) const { return r[i * size() + j]; }
  bool is_defined(std::size_t i, std::size_t j) const { return defined[i * size() + j] != 0; }
};

CorrelationMatrix correlation_matrix(const FeatureMatrix& matrix);
CorrelationMatrix correlation_matrix_serial(const FeatureMatrix& matrix);

// Keeps feature f iff |r(f, target)| > threshold or f is whitelisted, in the
// order of corr.names. A flagged (undefined) correlation never passes the
// threshold arm, so constant features survive only via the whitelist.
std::vector<std::string> retain_features(const CorrelationMatrix& corr, double threshold,
                                         const std::vector<std::string>& whitelist);

}  // namespace helpful
