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
#include <unordered_map>
#include <vector>

#include "helpful/sentiment.hpp"
#include "helpful/types.hpp"

namespace helpful {

// Canonical feature names, in canonical order.
extern const std::vector<std::string> kAllFeatures;

// Ordered feature selection. Column order of the built matrix equals the
// order of `enabled`.
struct FeatureSpec {
  std::vector<std::string> enabled;
  // When true, user_avg_helpful_votes excludes the review being featurized.
  // The default (false) uses the plain per-author mean, which leaks a little
  // label information through the review's own vote count.
  bool leave_one_out_user_avg = false;

  void validate() const;  // non-empty, duplicate-free, known names
};

struct FeatureMatrix {
  std::vector<std::string> columns;
  std::size_t n_rows = 0;
  std::vector<double> values;        // row-major, n_rows x columns.size()
  std::vector<std::uint8_t> labels;  // one 0/1 label per row

  std::size_t n_cols() const { return columns.size(); }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * n_cols(), n_cols()};
  }
  double at(std::size_t r, std::size_t c) const { return values[r * n_cols() + c]; }

  bool operator==(const FeatureMatrix&) const = default;
};

// Per-column mean and population (divide-by-n) standard deviation, fit on the
// given rows only. Columns with zero spread are flagged constant.
struct StandardizationStats {
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<std::uint8_t> constant;

  bool operator==(const StandardizationStats&) const = default;
};

// 1 iff the review collected at least one helpful vote.
inline int label_of(const RawReview& review) { return review.helpful_vote >= 1 ? 1 : 0; }

// Arithmetic mean of helpful_vote over each author's reviews.
std::unordered_map<std::string, double> user_mean_votes(const Dataset& dataset);

// Per-review leave-one-out variant; an author's only review maps to 0.
std::vector<double> user_mean_votes_loo(const Dataset& dataset);

// Arithmetic mean rating per product.
std::unordered_map<std::string, double> product_mean_rating(const Dataset& dataset);

FeatureMatrix build_features(const Dataset& dataset, const FeatureSpec& spec,
                             const SentimentLexicon& lexicon);
FeatureMatrix build_features_serial(const Dataset& dataset, const FeatureSpec& spec,
                                    const SentimentLexicon& lexicon);

StandardizationStats standardize_fit(const FeatureMatrix& matrix, std::span<const int> rows);
StandardizationStats standardize_fit_serial(const FeatureMatrix& matrix,
                                            std::span<const int> rows);

// Maps every column to (x - mean) / std; constant columns map to 0.
FeatureMatrix standardize_apply(const FeatureMatrix& matrix, const StandardizationStats& stats);

}  // namespace helpful
