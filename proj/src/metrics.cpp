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

#include "helpful/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "helpful/parallel.hpp"

namespace helpful {

double accuracy(std::span<const std::uint8_t> preds, std::span<const std::uint8_t> labels) {
  if (preds.size() != labels.size()) throw LengthMismatch("accuracy: lengths differ");
  if (preds.empty()) throw LengthMismatch("accuracy: empty input");
  std::int64_t correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i] == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(preds.size());
}

Metrics evaluate_model(const Model& model, const FeatureMatrix& matrix,
                       std::span<const int> rows, double threshold) {
  if (rows.empty()) throw LengthMismatch("evaluate_model: empty row set");
  if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("threshold must lie in (0, 1)");

  std::vector<double> outputs(rows.size());
  const std::int64_t n = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(static) if (parallel::threads() > 1)
  for (std::int64_t k = 0; k < n; ++k) {
    outputs[static_cast<std::size_t>(k)] =
        predict(model, matrix.row(static_cast<std::size_t>(rows[static_cast<std::size_t>(k)])));
  }

  Metrics m;
  m.n = n;
  std::int64_t correct = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const int pred = classify(outputs[k], threshold);
    if (pred == matrix.labels[static_cast<std::size_t>(rows[k])]) ++correct;
  }
  m.accuracy = static_cast<double>(correct) / static_cast<double>(rows.size());

  const ModelKind kind = model.config.kind;
  if (kind == ModelKind::kLinear || kind == ModelKind::kLogistic) {
    // Fixed chunk order, matching the other reductions.
    const std::size_t n_chunks = parallel::chunk_count(rows.size());
    double total = 0.0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
      const std::size_t begin = c * parallel::kChunk;
      const std::size_t end = std::min(begin + parallel::kChunk, rows.size());
      double sum = 0.0;
      for (std::size_t k = begin; k < end; ++k) {
        const double r =
            outputs[k] - static_cast<double>(matrix.labels[static_cast<std::size_t>(rows[k])]);
        sum += r * r;
      }
      total += sum;
    }
    m.mse = total / static_cast<double>(rows.size());
  }
  return m;
}

std::vector<StarRow> star_summary(const Dataset& dataset) {
  if (dataset.empty()) throw EmptyDataset("star_summary on an empty dataset");
  std::int64_t counts[5] = {0, 0, 0, 0, 0};
  double vote_sums[5] = {0, 0, 0, 0, 0};
  for (const RawReview& r : dataset.reviews) {
    int star = static_cast<int>(std::lround(r.rating));
    star = std::clamp(star, 1, 5);
    counts[star - 1] += 1;
    vote_sums[star - 1] += static_cast<double>(r.helpful_vote);
  }
  std::vector<StarRow> rows(5);
  for (int s = 0; s < 5; ++s) {
    rows[s].star = s + 1;
    rows[s].count = counts[s];
    rows[s].has_mean = counts[s] > 0;
    if (rows[s].has_mean) {
      rows[s].mean_helpful_votes = vote_sums[s] / static_cast<double>(counts[s]);
    }
  }
  return rows;
}

namespace {

const std::pair<XField, const char*> kXNames[] = {
    {XField::kTextLength, "text_length"},
    {XField::kImageCount, "image_count"},
    {XField::kHelpfulVote, "helpful_vote"},
    {XField::kRating, "rating"},
};

const std::pair<YField, const char*> kYNames[] = {
    {YField::kRating, "rating"},
    {YField::kHelpfulVote, "helpful_vote"},
    {YField::kCount, "count"},
    {YField::kLog10Count, "log10_count"},
};

double x_value(const RawReview& r, XField f) {
  switch (f) {
    case XField::kTextLength:
      return static_cast<double>(utf8_length(r.text));
    case XField::kImageCount:
      return static_cast<double>(r.image_count);
    case XField::kHelpfulVote:
      return static_cast<double>(r.helpful_vote);
    case XField::kRating:
      return r.rating;
  }
  return 0.0;
}

double y_value(const RawReview& r, YField f) {
  switch (f) {
    case YField::kRating:
      return r.rating;
    case YField::kHelpfulVote:
      return static_cast<double>(r.helpful_vote);
    default:
      return 0.0;  // count modes read no per-review field
  }
}

struct BucketAgg {
  std::int64_t count = 0;
  double sum = 0.0;
};

Histogram bucketed_impl(const Dataset& dataset, XField x, YField y, double width, bool use_omp) {
  if (!(width > 0.0)) throw ConfigError("bucket width must be positive");
  if (dataset.empty()) throw EmptyDataset("bucketed_mean on an empty dataset");

  const std::size_t n = dataset.size();
  const std::size_t n_chunks = parallel::chunk_count(n);
  std::vector<std::map<std::int64_t, BucketAgg>> partial(n_chunks);

  const std::int64_t nc = static_cast<std::int64_t>(n_chunks);
#pragma omp parallel for schedule(dynamic) if (use_omp && parallel::threads() > 1)
  for (std::int64_t c = 0; c < nc; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * parallel::kChunk;
    const std::size_t end = std::min(begin + parallel::kChunk, n);
    auto& local = partial[static_cast<std::size_t>(c)];
    for (std::size_t i = begin; i < end; ++i) {
      const RawReview& r = dataset.reviews[i];
      const std::int64_t idx =
          static_cast<std::int64_t>(std::floor(x_value(r, x) / width));
      BucketAgg& agg = local[idx];
      ++agg.count;
      agg.sum += y_value(r, y);
    }
  }

  // Deterministic merge in chunk order.
  std::map<std::int64_t, BucketAgg> merged;
  for (const auto& local : partial) {
    for (const auto& [idx, agg] : local) {
      BucketAgg& dst = merged[idx];
      dst.count += agg.count;
      dst.sum += agg.sum;
    }
  }

  Histogram hist;
  hist.width = width;
  const std::int64_t lo = merged.begin()->first;
  const std::int64_t hi = merged.rbegin()->first;
  for (std::int64_t idx = lo; idx <= hi; ++idx) {
    Histogram::Bucket b;
    b.index = idx;
    b.lo = static_cast<double>(idx) * width;
    b.hi = static_cast<double>(idx + 1) * width;
    auto it = merged.find(idx);
    b.count = it == merged.end() ? 0 : it->second.count;
    if (b.count > 0) {
      switch (y) {
        case YField::kCount:
          b.value = static_cast<double>(b.count);
          b.has_value = true;
          break;
        case YField::kLog10Count:
          b.value = std::log10(static_cast<double>(b.count));
          b.has_value = true;
          break;
        default:
          b.value = it->second.sum / static_cast<double>(b.count);
          b.has_value = true;
          break;
      }
    }
    hist.buckets.push_back(b);
  }
  return hist;
}

}  // namespace

XField x_field_from_name(const std::string& name) {
  for (const auto& [f, n] : kXNames) {
    if (name == n) return f;
  }
  throw ConfigError("unknown histogram x field: " + name);
}

YField y_field_from_name(const std::string& name) {
  for (const auto& [f, n] : kYNames) {
    if (name == n) return f;
  }
  throw ConfigError("unknown histogram y field: " + name);
}

const std::string& x_field_name(XField f) {
  static const std::string names[] = {"text_length", "image_count", "helpful_vote", "rating"};
  return names[static_cast<int>(f)];
}

const std::string& y_field_name(YField f) {
  static const std::string names[] = {"rating", "helpful_vote", "count", "log10_count"};
  return names[static_cast<int>(f)];
}

Histogram bucketed_mean(const Dataset& dataset, XField x, YField y, double bucket_width) {
  return bucketed_impl(dataset, x, y, bucket_width, true);
}

Histogram bucketed_mean_serial(const Dataset& dataset, XField x, YField y, double bucket_width) {
  return bucketed_impl(dataset, x, y, bucket_width, false);
}

}  // namespace helpful
