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

#include <doctest.h>

#include <cmath>

#include "helpful/ingest.hpp"
#include "helpful/metrics.hpp"
#include "helpful/synthetic.hpp"
#include "test_util.hpp"

using namespace helpful;
using test_util::make_review;

TEST_CASE("accuracy is the agreement fraction") {
  const std::vector<std::uint8_t> all = {1, 1, 0};
  CHECK(accuracy(all, all) == 1.0);

  const std::vector<std::uint8_t> preds = {1, 0, 1};
  const std::vector<std::uint8_t> labels = {1, 1, 1};
  CHECK(accuracy(preds, labels) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const std::vector<std::uint8_t> shorter = {1};
  CHECK_THROWS_AS(accuracy(preds, shorter), LengthMismatch);

  // complementary predictions partition the agreement
  std::vector<std::uint8_t> flipped = preds;
  for (auto& p : flipped) p = p != 0 ? 0 : 1;
  CHECK(accuracy(preds, labels) + accuracy(flipped, labels) == doctest::Approx(1.0));
}

TEST_CASE("star summary matches the hand-counted fixture") {
  auto [ds, stats] = load_dataset(test_util::fixture_path("reviews20.jsonl"), {});
  const std::vector<StarRow> rows = star_summary(ds);
  REQUIRE(rows.size() == 5);

  CHECK(rows[0].star == 1);
  CHECK(rows[0].count == 3);
  CHECK(rows[0].mean_helpful_votes == doctest::Approx(1.0));
  CHECK(rows[1].count == 5);
  CHECK(rows[1].mean_helpful_votes == doctest::Approx(6.0 / 5.0));
  CHECK(rows[2].count == 3);
  CHECK(rows[2].mean_helpful_votes == doctest::Approx(1.0));
  CHECK(rows[3].count == 4);
  CHECK(rows[3].mean_helpful_votes == doctest::Approx(1.0));
  CHECK(rows[4].count == 5);
  CHECK(rows[4].mean_helpful_votes == doctest::Approx(7.0 / 5.0));

  std::int64_t total = 0;
  for (const StarRow& r : rows) total += r.count;
  CHECK(total == 20);
}

TEST_CASE("star summary on a tiny inline dataset") {
  Dataset ds;
  ds.reviews = {make_review("u", "a", 5.0, 0), make_review("v", "a", 5.0, 2)};
  const auto rows = star_summary(ds);
  CHECK(rows[4].count == 2);
  CHECK(rows[4].mean_helpful_votes == doctest::Approx(1.0));
  // untouched star classes report no mean rather than zero
  for (int s = 0; s < 4; ++s) {
    CHECK(rows[s].count == 0);
    CHECK(!rows[s].has_mean);
  }
}

TEST_CASE("bucket counts and absent values") {
  Dataset ds;
  ds.reviews = {make_review("a", "p", 4.0, 0, 0), make_review("b", "p", 4.0, 0, 0),
                make_review("c", "p", 4.0, 0, 2)};
  const Histogram hist = bucketed_mean(ds, XField::kImageCount, YField::kCount, 1.0);
  REQUIRE(hist.buckets.size() == 3);
  CHECK(hist.buckets[0].count == 2);
  CHECK(hist.buckets[0].value == 2.0);
  CHECK(hist.buckets[1].count == 0);
  CHECK(!hist.buckets[1].has_value);
  CHECK(hist.buckets[2].count == 1);
}

TEST_CASE("log10 of a 100-review bucket is exactly 2") {
  Dataset ds;
  for (int i = 0; i < 100; ++i) ds.reviews.push_back(make_review("u", "p", 3.0, 0, 0));
  ds.reviews.push_back(make_review("u", "p", 3.0, 0, 5));
  const Histogram hist = bucketed_mean(ds, XField::kImageCount, YField::kLog10Count, 1.0);
  CHECK(hist.buckets.front().value == 2.0);
  CHECK(hist.buckets.back().value == 0.0);  // log10(1)
}

TEST_CASE("per-bucket means match a spreadsheet-style recount") {
  Dataset ds;
  ds.reviews = {
      make_review("a", "p", 5.0, 0, 0, "abcd"),        // len 4  -> bucket 0
      make_review("b", "p", 3.0, 0, 0, "abcdefgh"),    // len 8  -> bucket 0
      make_review("c", "p", 4.0, 0, 0, "0123456789a"), // len 11 -> bucket 1
      make_review("d", "p", 2.0, 0, 0, "0123456789abc"),  // len 13 -> bucket 1
      make_review("e", "p", 1.0, 0, 0, std::string(25, 'x')),
      make_review("f", "p", 5.0, 0, 0, std::string(27, 'y')),
  };
  const Histogram hist = bucketed_mean(ds, XField::kTextLength, YField::kRating, 10.0);

  // independent recount with plain loops
  double sums[3] = {0, 0, 0};
  int counts[3] = {0, 0, 0};
  for (const RawReview& r : ds.reviews) {
    const int b = static_cast<int>(r.text.size() / 10);
    sums[b] += r.rating;
    counts[b] += 1;
  }
  REQUIRE(hist.buckets.size() == 3);
  for (int b = 0; b < 3; ++b) {
    CHECK(hist.buckets[b].count == counts[b]);
    CHECK(hist.buckets[b].value == doctest::Approx(sums[b] / counts[b]).epsilon(1e-15));
  }
}

TEST_CASE("fixture histograms match the hand counts") {
  auto [ds, stats] = load_dataset(test_util::fixture_path("reviews20.jsonl"), {});

  const Histogram images = bucketed_mean(ds, XField::kImageCount, YField::kHelpfulVote, 1.0);
  REQUIRE(images.buckets.size() == 5);
  const std::int64_t expect_counts[] = {11, 4, 3, 1, 1};
  const double expect_means[] = {4.0 / 11.0, 1.0, 2.0, 4.0, 5.0};
  for (int b = 0; b < 5; ++b) {
    CHECK(images.buckets[b].count == expect_counts[b]);
    CHECK(images.buckets[b].value == doctest::Approx(expect_means[b]).epsilon(1e-12));
  }

  const Histogram text = bucketed_mean(ds, XField::kTextLength, YField::kRating, 10.0);
  REQUIRE(text.buckets.size() == 3);
  CHECK(text.buckets[0].count == 4);
  CHECK(text.buckets[0].value == doctest::Approx(3.25));
  CHECK(text.buckets[1].count == 6);
  CHECK(text.buckets[1].value == doctest::Approx(17.0 / 6.0));
  CHECK(text.buckets[2].count == 10);
  CHECK(text.buckets[2].value == doctest::Approx(3.3));
}

TEST_CASE("concatenating datasets adds bucket counts") {
  const Dataset a = generate_synthetic(400, 1, 0.5);
  const Dataset b = generate_synthetic(300, 2, 0.5);
  Dataset both;
  both.reviews = a.reviews;
  both.reviews.insert(both.reviews.end(), b.reviews.begin(), b.reviews.end());

  const Histogram ha = bucketed_mean(a, XField::kHelpfulVote, YField::kCount, 2.0);
  const Histogram hb = bucketed_mean(b, XField::kHelpfulVote, YField::kCount, 2.0);
  const Histogram hboth = bucketed_mean(both, XField::kHelpfulVote, YField::kCount, 2.0);

  auto count_of = [](const Histogram& h, std::int64_t index) -> std::int64_t {
    for (const auto& bk : h.buckets) {
      if (bk.index == index) return bk.count;
    }
    return 0;
  };
  std::int64_t total = 0;
  for (const auto& bk : hboth.buckets) {
    CHECK(bk.count == count_of(ha, bk.index) + count_of(hb, bk.index));
    total += bk.count;
  }
  CHECK(total == 700);
}

TEST_CASE("bucketed_mean validates the width") {
  const Dataset ds = generate_synthetic(20, 3, 0.5);
  CHECK_THROWS_AS(bucketed_mean(ds, XField::kRating, YField::kCount, 0.0), ConfigError);
}

TEST_CASE("evaluate_model reports accuracy and baseline mse") {
  // yhat = x0 exactly
  Model m;
  m.config.kind = ModelKind::kLinear;
  m.config.input_dim = 1;
  m.layers = {DenseLayer{1, 1, {1.0}, {0.0}}};

  FeatureMatrix data;
  data.columns = {"x"};
  data.n_rows = 4;
  data.values = {0.9, 0.2, 0.6, 0.1};
  data.labels = {1, 0, 0, 0};
  const std::vector<int> rows = {0, 1, 2, 3};

  const Metrics metrics = evaluate_model(m, data, rows);
  // classified: 1, 0, 1, 0 vs labels 1, 0, 0, 0
  CHECK(metrics.accuracy == doctest::Approx(0.75));
  REQUIRE(metrics.mse.has_value());
  const double expect = (0.01 + 0.04 + 0.36 + 0.01) / 4.0;
  CHECK(*metrics.mse == doctest::Approx(expect).epsilon(1e-12));
  CHECK(metrics.n == 4);

  m.config.kind = ModelKind::kMlp64;  // non-baseline kinds report no mse
  const Metrics no_mse = evaluate_model(m, data, rows);
  CHECK(!no_mse.mse.has_value());
}

TEST_CASE("field name round-trips") {
  CHECK(x_field_from_name("text_length") == XField::kTextLength);
  CHECK(y_field_from_name("log10_count") == YField::kLog10Count);
  CHECK(x_field_name(XField::kImageCount) == "image_count");
  CHECK(y_field_name(YField::kHelpfulVote) == "helpful_vote");
  CHECK_THROWS_AS(x_field_from_name("bogus"), ConfigError);
  CHECK_THROWS_AS(y_field_from_name("bogus"), ConfigError);
}
