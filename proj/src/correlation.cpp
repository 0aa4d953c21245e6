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

#include "helpful/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "helpful/parallel.hpp"

namespace helpful {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw LengthMismatch("pearson: sequences differ in length");
  if (x.size() < 2) throw LengthMismatch("pearson: need at least 2 points");

  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  // The sample-vs-population normalization cancels in the ratio.
  if (sxx == 0.0 || syy == 0.0) throw ZeroVariance("pearson: constant input");
  return sxy / std::sqrt(sxx * syy);
}

namespace {

CorrelationMatrix correlation_impl(const FeatureMatrix& matrix, bool use_omp) {
  if (matrix.n_rows < 2) throw LengthMismatch("correlation needs at least 2 rows");

  const std::size_t d = matrix.n_cols();
  const std::size_t total = d + 1;  // features plus the target

  std::vector<std::vector<double>> cols(total, std::vector<double>(matrix.n_rows));
  for (std::size_t r = 0; r < matrix.n_rows; ++r) {
    for (std::size_t c = 0; c < d; ++c) cols[c][r] = matrix.at(r, c);
    cols[d][r] = static_cast<double>(matrix.labels[r]);
  }

  CorrelationMatrix out;
  out.names = matrix.columns;
  out.names.push_back(kTargetName);
  out.r.assign(total * total, std::numeric_limits<double>::quiet_NaN());
  out.defined.assign(total * total, 0);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = i; j < total; ++j) pairs.emplace_back(i, j);
  }

  const std::int64_t np = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic) if (use_omp && parallel::threads() > 1)
  for (std::int64_t k = 0; k < np; ++k) {
    const auto [i, j] = pairs[static_cast<std::size_t>(k)];
    double value = std::numeric_limits<double>::quiet_NaN();
    bool ok = true;
    try {
      value = pearson(cols[i], cols[j]);
    } catch (const ZeroVariance&) {
      ok = false;
    }
    if (ok) {
      out.r[i * total + j] = value;
      out.r[j * total + i] = value;
      out.defined[i * total + j] = 1;
      out.defined[j * total + i] = 1;
    }
  }
  return out;
}

}  // namespace

CorrelationMatrix correlation_matrix(const FeatureMatrix& matrix) {
  return correlation_impl(matrix, true);
}

CorrelationMatrix correlation_matrix_serial(const FeatureMatrix& matrix) {
  return correlation_impl(matrix, false);
}

std::vector<std::string> retain_features(const CorrelationMatrix& corr, double threshold,
                                         const std::vector<std::string>& whitelist) {
  if (threshold < 0.0) throw ConfigError("retention threshold must be >= 0");

  const auto target_it = std::find(corr.names.begin(), corr.names.end(), kTargetName);
  if (target_it == corr.names.end()) {
    throw ConfigError("correlation matrix has no target column");
  }
  const std::size_t target = static_cast<std::size_t>(target_it - corr.names.begin());

  std::unordered_set<std::string> wanted(whitelist.begin(), whitelist.end());
  for (const std::string& name : whitelist) {
    if (std::find(corr.names.begin(), corr.names.end(), name) == corr.names.end()) {
      throw UnknownWhitelistName("whitelisted feature not in correlation map: " + name);
    }
  }

  std::vector<std::string> retained;
  for (std::size_t i = 0; i < corr.size(); ++i) {
    if (i == target) continue;
    const bool over_threshold = corr.is_defined(i, target) &&
                                std::abs(corr.at(i, target)) > threshold;
    if (over_threshold || wanted.count(corr.names[i]) != 0) {
      retained.push_back(corr.names[i]);
    }
  }
  return retained;
}

}  // namespace helpful
