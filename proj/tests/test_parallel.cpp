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

// Every OpenMP kernel must reproduce its serial reference bitwise, for any
// thread count.

#include <doctest.h>

#include <numeric>

#include "helpful/correlation.hpp"
#include "helpful/features.hpp"
#include "helpful/ingest.hpp"
#include "helpful/metrics.hpp"
#include "helpful/model.hpp"
#include "helpful/parallel.hpp"
#include "helpful/synthetic.hpp"
#include "test_util.hpp"

using namespace helpful;

namespace {

struct ThreadGuard {
  ~ThreadGuard() { parallel::set_threads(1); }
};

bool histograms_equal(const Histogram& a, const Histogram& b) {
  if (a.buckets.size() != b.buckets.size()) return false;
  for (std::size_t i = 0; i < a.buckets.size(); ++i) {
    if (a.buckets[i].count != b.buckets[i].count) return false;
    if (a.buckets[i].has_value != b.buckets[i].has_value) return false;
    if (a.buckets[i].value != b.buckets[i].value) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference bitwise") {
  ThreadGuard guard;

  const Dataset ds = generate_synthetic(3000, 21, 0.8);
  std::vector<std::string> lines(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) lines[i] = serialize_review(ds.reviews[i]);
  lines.insert(lines.begin() + 100, "definitely not json");

  FeatureSpec spec;
  spec.enabled = kAllFeatures;
  const SentimentLexicon& lexicon = builtin_lexicon();

  parallel::set_threads(1);
  const ParsedLines parsed_ref = parse_records_serial(lines, {});
  const FeatureMatrix feat_ref = build_features_serial(ds, spec, lexicon);
  const CorrelationMatrix corr_ref = correlation_matrix_serial(feat_ref);

  std::vector<int> rows(feat_ref.n_rows);
  std::iota(rows.begin(), rows.end(), 0);
  const StandardizationStats stats_ref = standardize_fit_serial(feat_ref, rows);

  ModelConfig mcfg;
  mcfg.kind = ModelKind::kMlp64Deep;
  mcfg.input_dim = static_cast<int>(feat_ref.n_cols());
  mcfg.seed = 5;
  const Model model = init_model(mcfg);
  const BatchResult grad_ref = batch_gradients_serial(model, feat_ref, rows, Mode::kTrain, 12345);
  const double loss_ref = dataset_loss_serial(model, feat_ref, rows);
  const Histogram hist_ref =
      bucketed_mean_serial(ds, XField::kTextLength, YField::kRating, 25.0);

  for (int threads : {1, 2, 3}) {
    CAPTURE(threads);
    parallel::set_threads(threads);

    const ParsedLines parsed = parse_records(lines, {});
    CHECK(parsed.reviews == parsed_ref.reviews);
    CHECK(parsed.stats == parsed_ref.stats);

    const FeatureMatrix feat = build_features(ds, spec, lexicon);
    CHECK(feat == feat_ref);

    const CorrelationMatrix corr = correlation_matrix(feat);
    CHECK(corr.defined == corr_ref.defined);
    REQUIRE(corr.r.size() == corr_ref.r.size());
    for (std::size_t i = 0; i < corr.r.size(); ++i) {
      if (corr_ref.defined[i] != 0) CHECK(corr.r[i] == corr_ref.r[i]);
    }

    CHECK(standardize_fit(feat, rows) == stats_ref);

    const BatchResult grad = batch_gradients(model, feat, rows, Mode::kTrain, 12345);
    CHECK(grad.loss == grad_ref.loss);
    CHECK(grad.grads == grad_ref.grads);

    CHECK(dataset_loss(model, feat, rows) == loss_ref);

    CHECK(histograms_equal(bucketed_mean(ds, XField::kTextLength, YField::kRating, 25.0),
                           hist_ref));
  }
}

TEST_CASE("thread count setting clamps and reads back") {
  ThreadGuard guard;
  parallel::set_threads(0);
  CHECK(parallel::threads() == 1);
  parallel::set_threads(4);
  CHECK(parallel::threads() == 4);
}
