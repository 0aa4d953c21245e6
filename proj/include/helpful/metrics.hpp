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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "helpful/model.hpp"
#include "helpful/types.hpp"

namespace helpful {

struct Metrics {
  double accuracy = 0.0;
  std::optional<double> mse;  // defined for the regression baselines only
  std::int64_t n = 0;

  bool operator==(const Metrics&) const = default;
};

// Fraction of positions where the sequences agree.
double accuracy(std::span<const std::uint8_t> preds, std::span<const std::uint8_t> labels);

// Eval-mode test metrics: accuracy for every kind (predictions thresholded
// at `threshold`); MSE of the raw output against the 0/1 label for the
// linear and logistic baselines.
Metrics evaluate_model(const Model& model, const FeatureMatrix& matrix,
                       std::span<const int> rows, double threshold = 0.5);

// Reviews grouped by nearest-integer star; classes that never occur report
// no mean rather than 0.
struct StarRow {
  int star = 0;
  std::int64_t count = 0;
  double mean_helpful_votes = 0.0;
  bool has_mean = false;
};
std::vector<StarRow> star_summary(const Dataset& dataset);

enum class XField { kTextLength, kImageCount, kHelpfulVote, kRating };
enum class YField { kRating, kHelpfulVote, kCount, kLog10Count };

XField x_field_from_name(const std::string& name);
YField y_field_from_name(const std::string& name);
const std::string& x_field_name(XField f);
const std::string& y_field_name(YField f);

// Left-closed buckets [k*w, (k+1)*w) over the chosen x field. The value is
// the bucket count, log10(count), or the in-bucket mean of the y field;
// empty buckets report no value.
struct Histogram {
  double width = 0.0;
  struct Bucket {
    std::int64_t index = 0;
    double lo = 0.0;
    double hi = 0.0;
    std::int64_t count = 0;
    double value = 0.0;
    bool has_value = false;
  };
  std::vector<Bucket> buckets;  // contiguous from the first to last occupied
};

Histogram bucketed_mean(const Dataset& dataset, XField x, YField y, double bucket_width);
Histogram bucketed_mean_serial(const Dataset& dataset, XField x, YField y, double bucket_width);

struct ComparisonRow {
  std::string name;
  Metrics metrics;
};

}  // namespace helpful
