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

#include "helpful/features.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "helpful/parallel.hpp"

namespace helpful {

const std::vector<std::string> kAllFeatures = {
    "text_length",  "polarity", "subjectivity",           "product_avg_rating",
    "rating",       "user_avg_helpful_votes",             "images_per_review",
    "timestamp",
};

namespace {

enum class Feature {
  kTextLength,
  kPolarity,
  kSubjectivity,
  kProductAvgRating,
  kRating,
  kUserAvgHelpfulVotes,
  kImagesPerReview,
  kTimestamp,
};

Feature feature_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kAllFeatures.size(); ++i) {
    if (kAllFeatures[i] == name) return static_cast<Feature>(i);
  }
  throw ConfigError("unknown feature name: " + name);
}

struct VoteAgg {
  double sum = 0.0;
  std::int64_t count = 0;
};

std::unordered_map<std::string, VoteAgg> vote_aggregates(const Dataset& dataset) {
  std::unordered_map<std::string, VoteAgg> agg;
  for (const RawReview& r : dataset.reviews) {
    VoteAgg& a = agg[r.user_id];
    a.sum += static_cast<double>(r.helpful_vote);
    ++a.count;
  }
  return agg;
}

// Shared row-fill used by the serial and OpenMP builders. Each row writes its
// own slice, so the kernels are bitwise identical by construction.
struct RowBuilder {
  const Dataset& dataset;
  const std::vector<Feature>& layout;
  const SentimentLexicon& lexicon;
  bool leave_one_out;
  const std::unordered_map<std::string, VoteAgg>& user_votes;
  const std::unordered_map<std::string, double>& product_rating;

  void fill(std::size_t i, double* row) const {
    const RawReview& r = dataset.reviews[i];
    SentimentLexicon::Scores senti;
    bool senti_done = false;
    for (std::size_t c = 0; c < layout.size(); ++c) {
      switch (layout[c]) {
        case Feature::kTextLength:
          row[c] = static_cast<double>(utf8_length(r.text));
          break;
        case Feature::kPolarity:
        case Feature::kSubjectivity:
          if (!senti_done) {
            senti = sentiment_scores(r.text, lexicon);
            senti_done = true;
          }
          row[c] = layout[c] == Feature::kPolarity ? senti.polarity : senti.subjectivity;
          break;
        case Feature::kProductAvgRating:
          row[c] = product_rating.at(r.asin);
          break;
        case Feature::kRating:
          row[c] = r.rating;
          break;
        case Feature::kUserAvgHelpfulVotes: {
          const VoteAgg& a = user_votes.at(r.user_id);
          if (leave_one_out) {
            row[c] = a.count > 1 ? (a.sum - static_cast<double>(r.helpful_vote)) /
                                       static_cast<double>(a.count - 1)
                                 : 0.0;
          } else {
            row[c] = a.sum / static_cast<double>(a.count);
          }
          break;
        }
        case Feature::kImagesPerReview:
          row[c] = static_cast<double>(r.image_count);
          break;
        case Feature::kTimestamp:
          row[c] = static_cast<double>(r.timestamp);
          break;
      }
    }
  }
};

FeatureMatrix build_features_impl(const Dataset& dataset, const FeatureSpec& spec,
                                  const SentimentLexicon& lexicon, bool use_omp) {
  if (dataset.empty()) throw EmptyDataset("cannot build features from an empty dataset");
  spec.validate();

  std::vector<Feature> layout;
  layout.reserve(spec.enabled.size());
  for (const std::string& name : spec.enabled) layout.push_back(feature_from_name(name));

  const auto user_votes = vote_aggregates(dataset);
  std::unordered_map<std::string, double> product_rating;
  if (std::find(layout.begin(), layout.end(), Feature::kProductAvgRating) != layout.end()) {
    product_rating = product_mean_rating(dataset);
  }

  FeatureMatrix m;
  m.columns = spec.enabled;
  m.n_rows = dataset.size();
  m.values.resize(m.n_rows * m.n_cols());
  m.labels.resize(m.n_rows);

  const RowBuilder builder{dataset,       layout,     lexicon,
                           spec.leave_one_out_user_avg, user_votes, product_rating};
  const std::int64_t n = static_cast<std::int64_t>(m.n_rows);
  const std::size_t d = m.n_cols();
  if (use_omp) {
#pragma omp parallel for schedule(dynamic, 256) if (parallel::threads() > 1)
    for (std::int64_t i = 0; i < n; ++i) {
      builder.fill(static_cast<std::size_t>(i), m.values.data() + i * d);
      m.labels[i] = static_cast<std::uint8_t>(label_of(dataset.reviews[i]));
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      builder.fill(static_cast<std::size_t>(i), m.values.data() + i * d);
      m.labels[i] = static_cast<std::uint8_t>(label_of(dataset.reviews[i]));
    }
  }
  return m;
}

StandardizationStats fit_impl(const FeatureMatrix& matrix, std::span<const int> rows,
                              bool use_omp) {
  if (rows.empty()) throw EmptyDataset("standardization fit needs at least one row");
  const std::size_t d = matrix.n_cols();
  StandardizationStats stats;
  stats.mean.assign(d, 0.0);
  stats.stddev.assign(d, 0.0);
  stats.constant.assign(d, 0);

  const std::int64_t dd = static_cast<std::int64_t>(d);
  // Two passes per column, summed in row order; parallel across columns only.
#pragma omp parallel for schedule(static) if (use_omp && parallel::threads() > 1)
  for (std::int64_t c = 0; c < dd; ++c) {
    double sum = 0.0;
    for (int r : rows) sum += matrix.at(static_cast<std::size_t>(r), c);
    const double mean = sum / static_cast<double>(rows.size());
    double sq = 0.0;
    for (int r : rows) {
      const double dlt = matrix.at(static_cast<std::size_t>(r), c) - mean;
      sq += dlt * dlt;
    }
    stats.mean[c] = mean;
    stats.stddev[c] = std::sqrt(sq / static_cast<double>(rows.size()));
    stats.constant[c] = stats.stddev[c] == 0.0 ? 1 : 0;
  }
  return stats;
}

}  // namespace

void FeatureSpec::validate() const {
  if (enabled.empty()) throw ConfigError("feature spec must enable at least one feature");
  std::unordered_set<std::string> seen;
  for (const std::string& name : enabled) {
    feature_from_name(name);
    if (!seen.insert(name).second) throw ConfigError("duplicate feature: " + name);
  }
}

std::unordered_map<std::string, double> user_mean_votes(const Dataset& dataset) {
  std::unordered_map<std::string, double> out;
  for (const auto& [user, agg] : vote_aggregates(dataset)) {
    out[user] = agg.sum / static_cast<double>(agg.count);
  }
  return out;
}

std::vector<double> user_mean_votes_loo(const Dataset& dataset) {
  const auto agg = vote_aggregates(dataset);
  std::vector<double> out(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const RawReview& r = dataset.reviews[i];
    const VoteAgg& a = agg.at(r.user_id);
    out[i] = a.count > 1 ? (a.sum - static_cast<double>(r.helpful_vote)) /
                               static_cast<double>(a.count - 1)
                         : 0.0;
  }
  return out;
}

std::unordered_map<std::string, double> product_mean_rating(const Dataset& dataset) {
  struct Agg {
    double sum = 0.0;
    std::int64_t count = 0;
  };
  std::unordered_map<std::string, Agg> agg;
  for (const RawReview& r : dataset.reviews) {
    Agg& a = agg[r.asin];
    a.sum += r.rating;
    ++a.count;
  }
  std::unordered_map<std::string, double> out;
  for (const auto& [asin, a] : agg) out[asin] = a.sum / static_cast<double>(a.count);
  return out;
}

FeatureMatrix build_features(const Dataset& dataset, const FeatureSpec& spec,
                             const SentimentLexicon& lexicon) {
  return build_features_impl(dataset, spec, lexicon, /*use_omp=*/true);
}

FeatureMatrix build_features_serial(const Dataset& dataset, const FeatureSpec& spec,
                                    const SentimentLexicon& lexicon) {
  return build_features_impl(dataset, spec, lexicon, /*use_omp=*/false);
}

StandardizationStats standardize_fit(const FeatureMatrix& matrix, std::span<const int> rows) {
  return fit_impl(matrix, rows, true);
}

StandardizationStats standardize_fit_serial(const FeatureMatrix& matrix,
                                            std::span<const int> rows) {
  return fit_impl(matrix, rows, false);
}

FeatureMatrix standardize_apply(const FeatureMatrix& matrix, const StandardizationStats& stats) {
  if (stats.mean.size() != matrix.n_cols()) {
    throw DimensionMismatch("standardization stats do not match matrix width");
  }
  FeatureMatrix out = matrix;
  const std::size_t d = out.n_cols();
  for (std::size_t i = 0; i < out.n_rows; ++i) {
    double* row = out.values.data() + i * d;
    for (std::size_t c = 0; c < d; ++c) {
      row[c] = stats.constant[c] ? 0.0 : (row[c] - stats.mean[c]) / stats.stddev[c];
    }
  }
  return out;
}

}  // namespace helpful
