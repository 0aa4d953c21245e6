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

#include <algorithm>
#include <numeric>

#include "helpful/rng.hpp"
#include "helpful/train.hpp"

using namespace helpful;

namespace {

FeatureMatrix labeled_matrix(int n, int d, double pos_rate, std::uint64_t seed) {
  Rng rng(seed);
  FeatureMatrix m;
  for (int c = 0; c < d; ++c) m.columns.push_back("f" + std::to_string(c));
  m.n_rows = n;
  m.values.resize(static_cast<std::size_t>(n) * d);
  m.labels.resize(n);
  for (double& v : m.values) v = rng.uniform(-1.0, 1.0);
  for (auto& l : m.labels) l = rng.uniform() < pos_rate ? 1 : 0;
  return m;
}

// Labels decided by a margin-separated hyperplane; linearly separable.
FeatureMatrix separable_matrix(int n, std::uint64_t seed) {
  Rng rng(seed);
  FeatureMatrix m;
  m.columns = {"a", "b"};
  m.n_rows = n;
  m.values.resize(static_cast<std::size_t>(n) * 2);
  m.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = rng.uniform(-1.0, 1.0);
    double y = rng.uniform(-1.0, 1.0);
    const double margin = x + y;
    if (std::abs(margin) < 0.2) {
      x += margin >= 0 ? 0.3 : -0.3;  // push away from the boundary
    }
    m.values[i * 2] = x;
    m.values[i * 2 + 1] = y;
    m.labels[i] = x + y >= 0 ? 1 : 0;
  }
  return m;
}

double positive_rate(const FeatureMatrix& m, const std::vector<int>& rows) {
  double sum = 0;
  for (int r : rows) sum += m.labels[r];
  return sum / static_cast<double>(rows.size());
}

}  // namespace

TEST_CASE("split sizes follow the fractions exactly") {
  const FeatureMatrix m = labeled_matrix(1000, 2, 0.3, 7);
  TrainConfig cfg;
  cfg.seed = 21;
  const SplitIndices s = split_dataset(m, cfg);
  CHECK(s.train.size() == 800);
  CHECK(s.val.size() == 100);
  CHECK(s.test.size() == 100);
}

TEST_CASE("split is an exact, seeded, disjoint partition") {
  const FeatureMatrix m = labeled_matrix(1003, 2, 0.4, 9);
  TrainConfig cfg;
  cfg.seed = 4;
  const SplitIndices a = split_dataset(m, cfg);
  const SplitIndices b = split_dataset(m, cfg);
  CHECK(a.train == b.train);
  CHECK(a.val == b.val);
  CHECK(a.test == b.test);

  std::vector<int> all;
  all.insert(all.end(), a.train.begin(), a.train.end());
  all.insert(all.end(), a.val.begin(), a.val.end());
  all.insert(all.end(), a.test.begin(), a.test.end());
  std::sort(all.begin(), all.end());
  std::vector<int> expect(1003);
  std::iota(expect.begin(), expect.end(), 0);
  CHECK(all == expect);

  cfg.seed = 5;
  const SplitIndices c = split_dataset(m, cfg);
  CHECK(a.train != c.train);
}

TEST_CASE("split stratifies the positive rate") {
  const FeatureMatrix m = labeled_matrix(10000, 2, 0.3, 11);
  TrainConfig cfg;
  cfg.seed = 8;
  const SplitIndices s = split_dataset(m, cfg);
  std::vector<int> everything(10000);
  std::iota(everything.begin(), everything.end(), 0);
  const double global = positive_rate(m, everything);
  for (const auto* part : {&s.train, &s.val, &s.test}) {
    const double rate = positive_rate(m, *part);
    CHECK(rate > global - 0.01);
    CHECK(rate < global + 0.01);
  }
}

TEST_CASE("split refuses tiny inputs") {
  const FeatureMatrix m = labeled_matrix(9, 1, 0.5, 2);
  TrainConfig cfg;
  CHECK_THROWS_AS(split_dataset(m, cfg), TooFewRows);
}

TEST_CASE("early stopper follows the scripted patience-9 trace") {
  EarlyStopper stopper(9);
  CHECK(!stopper.update(1, 1.0));
  CHECK(!stopper.update(2, 0.9));
  for (int epoch = 3; epoch <= 10; ++epoch) {
    CHECK(!stopper.update(epoch, 0.9));  // nine non-improving epochs needed
  }
  CHECK(stopper.update(11, 0.9));  // the ninth consecutive miss stops training
  CHECK(stopper.best_epoch() == 2);
  CHECK(stopper.best() == 0.9);
}

TEST_CASE("improvement must beat the best by more than 1e-12") {
  EarlyStopper stopper(2);
  CHECK(!stopper.update(1, 1.0));
  CHECK(!stopper.update(2, 1.0 - 1e-13));  // too small to count
  CHECK(stopper.best_epoch() == 1);
  CHECK(stopper.update(3, 1.0 - 5e-13));   // still too small: patience exhausted
  EarlyStopper fresh(2);
  CHECK(!fresh.update(1, 1.0));
  CHECK(!fresh.update(2, 1.0 - 1e-9));  // real improvement resets the counter
  CHECK(fresh.best_epoch() == 2);
}

TEST_CASE("training runs to max_epochs when the loss keeps improving") {
  const FeatureMatrix m = separable_matrix(300, 3);
  TrainConfig cfg;
  cfg.seed = 13;
  cfg.batch_size = 64;
  cfg.max_epochs = 5;
  cfg.patience = 50;
  ModelConfig mcfg;
  mcfg.kind = ModelKind::kLogistic;
  mcfg.input_dim = 2;
  mcfg.seed = 5;

  const auto [model, report] = train(init_model(mcfg), m, cfg);
  CHECK(report.stop_reason == "max_epochs");
  CHECK(report.train_loss.size() == 5);
  CHECK(report.val_loss.size() == 5);
  CHECK(report.best_epoch >= 1);
}

TEST_CASE("training is bitwise deterministic") {
  const FeatureMatrix m = labeled_matrix(400, 3, 0.4, 33);
  TrainConfig cfg;
  cfg.seed = 99;
  cfg.batch_size = 64;
  cfg.max_epochs = 8;
  ModelConfig mcfg;
  mcfg.kind = ModelKind::kMlp64;
  mcfg.input_dim = 3;
  mcfg.seed = 44;

  const auto [model_a, report_a] = train(init_model(mcfg), m, cfg);
  const auto [model_b, report_b] = train(init_model(mcfg), m, cfg);
  CHECK(model_a == model_b);
  CHECK(report_a.train_loss == report_b.train_loss);
  CHECK(report_a.val_loss == report_b.val_loss);
  CHECK(report_a.best_epoch == report_b.best_epoch);
  CHECK(report_a.test_metrics == report_b.test_metrics);
}

TEST_CASE("the returned model carries the best-validation parameters") {
  const FeatureMatrix m = labeled_matrix(500, 3, 0.5, 17);
  TrainConfig cfg;
  cfg.seed = 3;
  cfg.batch_size = 32;
  cfg.max_epochs = 30;
  cfg.patience = 5;
  ModelConfig mcfg;
  mcfg.kind = ModelKind::kMlp128;
  mcfg.input_dim = 3;
  mcfg.seed = 10;

  const auto [model, report] = train(init_model(mcfg), m, cfg);
  const double best_recorded = *std::min_element(report.val_loss.begin(), report.val_loss.end());
  CHECK(report.val_loss[report.best_epoch - 1] == best_recorded);

  const SplitIndices split = split_dataset(m, cfg);
  CHECK(dataset_loss(model, m, split.val) == best_recorded);

  // never more than `patience` epochs beyond the best
  CHECK(static_cast<int>(report.val_loss.size()) - report.best_epoch <= cfg.patience);
}

TEST_CASE("logistic regression separates separable data") {
  const FeatureMatrix m = separable_matrix(2000, 8);
  TrainConfig cfg;
  cfg.seed = 12;
  cfg.max_epochs = 60;
  cfg.patience = 60;
  cfg.learning_rate = 0.05;  // quick convergence on an easy problem
  ModelConfig mcfg;
  mcfg.kind = ModelKind::kLogistic;
  mcfg.input_dim = 2;
  mcfg.seed = 30;

  const auto [model, report] = train(init_model(mcfg), m, cfg);
  const SplitIndices split = split_dataset(m, cfg);
  const Metrics on_train = evaluate_model(model, m, split.train);
  CHECK(on_train.accuracy >= 0.99);
}

TEST_CASE("diverging training reports a non-finite loss") {
  const FeatureMatrix m = labeled_matrix(200, 2, 0.5, 5);
  TrainConfig cfg;
  cfg.seed = 6;
  // Adam's step size is capped near lr, so the squared loss only overflows
  // once the parameters reach ~1e154.
  cfg.learning_rate = 1e200;
  cfg.batch_size = 32;
  cfg.max_epochs = 4;
  ModelConfig mcfg;
  mcfg.kind = ModelKind::kLinear;
  mcfg.input_dim = 2;
  mcfg.seed = 2;
  CHECK_THROWS_AS(train(init_model(mcfg), m, cfg), NonFiniteLoss);
}
