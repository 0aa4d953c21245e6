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

#include "helpful/train.hpp"

#include <algorithm>
#include <cmath>

#include "helpful/rng.hpp"

namespace helpful {

namespace {

// Largest-remainder apportionment of `total` over ideal shares.
std::vector<std::size_t> apportion(const std::vector<double>& ideal, std::size_t total,
                                   const std::vector<std::size_t>& cap) {
  const std::size_t k = ideal.size();
  std::vector<std::size_t> out(k);
  std::vector<std::pair<double, std::size_t>> remainder(k);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = std::min(static_cast<std::size_t>(std::floor(ideal[i])), cap[i]);
    remainder[i] = {ideal[i] - std::floor(ideal[i]), i};
    assigned += out[i];
  }
  std::stable_sort(remainder.begin(), remainder.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::size_t cursor = 0;
  while (assigned < total) {
    const std::size_t i = remainder[cursor % k].second;
    if (out[i] < cap[i]) {
      ++out[i];
      ++assigned;
    }
    ++cursor;
  }
  return out;
}

}  // namespace

SplitIndices split_dataset(const FeatureMatrix& matrix, const TrainConfig& cfg) {
  cfg.validate();
  const std::size_t n = matrix.n_rows;
  if (n < 10) throw TooFewRows("split needs at least 10 rows");

  // Global split sizes first, also by largest remainder, so they always sum
  // to n and match the fractions exactly when n divides evenly.
  const double dn = static_cast<double>(n);
  std::vector<double> ideal = {cfg.split_train * dn, cfg.split_val * dn, cfg.split_test * dn};
  std::vector<std::size_t> caps = {n, n, n};
  std::vector<std::size_t> sizes = apportion(ideal, n, caps);

  // Stratify: shuffle each class once, then hand out per-class quotas for
  // train and val (largest remainder again); test takes the remainder.
  std::vector<int> classes[2];
  for (std::size_t i = 0; i < n; ++i) {
    classes[matrix.labels[i] != 0 ? 1 : 0].push_back(static_cast<int>(i));
  }
  const std::uint64_t split_seed = derive_seed(cfg.seed, "split");
  for (int c = 0; c < 2; ++c) {
    Rng rng(mix64(split_seed, static_cast<std::uint64_t>(c)));
    rng.shuffle(classes[c]);
  }

  const std::vector<std::size_t> class_sizes = {classes[0].size(), classes[1].size()};
  std::vector<double> train_ideal(2), val_ideal(2);
  for (int c = 0; c < 2; ++c) {
    train_ideal[c] = static_cast<double>(sizes[0]) * static_cast<double>(class_sizes[c]) / dn;
    val_ideal[c] = static_cast<double>(sizes[1]) * static_cast<double>(class_sizes[c]) / dn;
  }
  const std::vector<std::size_t> train_quota = apportion(train_ideal, sizes[0], class_sizes);
  std::vector<std::size_t> val_cap(2);
  for (int c = 0; c < 2; ++c) val_cap[c] = class_sizes[c] - train_quota[c];
  const std::vector<std::size_t> val_quota = apportion(val_ideal, sizes[1], val_cap);

  SplitIndices out;
  for (int c = 0; c < 2; ++c) {
    const std::vector<int>& pool = classes[c];
    std::size_t k = 0;
    for (; k < train_quota[c]; ++k) out.train.push_back(pool[k]);
    for (; k < train_quota[c] + val_quota[c]; ++k) out.val.push_back(pool[k]);
    for (; k < pool.size(); ++k) out.test.push_back(pool[k]);
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.val.begin(), out.val.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<Model, TrainReport> train(Model model, const FeatureMatrix& matrix,
                                    const TrainConfig& cfg) {
  cfg.validate();
  model.config.validate();
  if (matrix.n_cols() != static_cast<std::size_t>(model.config.input_dim)) {
    throw DimensionMismatch("matrix width does not match model input_dim");
  }

  const SplitIndices split = split_dataset(matrix, cfg);
  const std::uint64_t shuffle_seed = derive_seed(cfg.seed, "shuffle");
  const std::uint64_t dropout_seed = derive_seed(cfg.seed, "dropout");

  AdamState state = init_adam_state(model);
  EarlyStopper stopper(cfg.patience);
  TrainReport report;
  report.model_config = model.config;
  report.train_config = cfg;

  Model best = model;
  std::vector<int> order = split.train;

  int epoch = 0;
  std::string stop_reason = "max_epochs";
  while (epoch < cfg.max_epochs) {
    ++epoch;
    Rng shuffle_rng(mix64(shuffle_seed, static_cast<std::uint64_t>(epoch)));
    shuffle_rng.shuffle(order);

    double loss_sum = 0.0;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      const std::span<const int> rows(order.data() + start, end - start);
      const std::uint64_t mask_seed =
          mix64(dropout_seed, mix64(static_cast<std::uint64_t>(epoch),
                                    static_cast<std::uint64_t>(batch_index)));
      BatchResult batch = batch_gradients(model, matrix, rows, Mode::kTrain, mask_seed);
      if (!std::isfinite(batch.loss)) {
        throw NonFiniteLoss("batch loss is not finite at epoch " + std::to_string(epoch) +
                            ", batch " + std::to_string(batch_index));
      }
      if (cfg.optimizer == Optimizer::kAdamW) {
        adamw_step(model, batch.grads, state, cfg);
      } else {
        adam_step(model, batch.grads, state, cfg);
      }
      loss_sum += batch.loss * static_cast<double>(rows.size());
      ++batch_index;
    }
    report.train_loss.push_back(loss_sum / static_cast<double>(order.size()));

    const double val = dataset_loss(model, matrix, split.val);
    if (!std::isfinite(val)) {
      throw NonFiniteLoss("validation loss is not finite at epoch " + std::to_string(epoch));
    }
    report.val_loss.push_back(val);

    const bool stop = stopper.update(epoch, val);
    if (stopper.best_epoch() == epoch) {
      best = model;  // snapshot the new best-validation parameters
    }
    if (stop) {
      stop_reason = "early_stop";
      break;
    }
  }

  report.best_epoch = stopper.best_epoch();
  report.stop_reason = stop_reason;
  report.test_metrics = evaluate_model(best, matrix, split.test);
  return {std::move(best), std::move(report)};
}

}  // namespace helpful
