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

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "helpful/metrics.hpp"
#include "helpful/model.hpp"
#include "helpful/optim.hpp"

namespace helpful {

struct SplitIndices {
  std::vector<int> train;
  std::vector<int> val;
  std::vector<int> test;
};

// Seeded, label-stratified partition. Split sizes follow the configured
// fractions exactly (largest-remainder rounding); each split's positive rate
// stays within one count of proportional per class. Throws TooFewRows when
// the matrix has fewer than 10 rows.
SplitIndices split_dataset(const FeatureMatrix& matrix, const TrainConfig& cfg);

// Patience rule over a validation-loss trace. Epochs are 1-indexed;
// improvement means strictly lower than the best by more than 1e-12.
class EarlyStopper {
 public:
  explicit EarlyStopper(int patience) : patience_(patience) {}

  // Feed one epoch's validation loss; returns true when training should stop
  // (patience consecutive non-improving epochs have accumulated).
  bool update(int epoch, double val_loss) {
    if (val_loss < best_ - kMinDelta) {
      best_ = val_loss;
      best_epoch_ = epoch;
      since_best_ = 0;
    } else {
      ++since_best_;
    }
    return since_best_ >= patience_;
  }

  double best() const { return best_; }
  int best_epoch() const { return best_epoch_; }
  int epochs_since_best() const { return since_best_; }

  static constexpr double kMinDelta = 1e-12;

 private:
  int patience_;
  double best_ = std::numeric_limits<double>::infinity();
  int best_epoch_ = 0;
  int since_best_ = 0;
};

struct TrainReport {
  std::vector<double> train_loss;  // one entry per completed epoch
  std::vector<double> val_loss;
  int best_epoch = 0;              // 1-indexed
  std::string stop_reason;         // "early_stop" or "max_epochs"
  Metrics test_metrics;
  ModelConfig model_config;
  TrainConfig train_config;
};

// Mini-batch training with seeded per-epoch shuffling, per-epoch validation,
// the patience rule above, and best-epoch weight restoration. The matrix is
// expected to be standardized already (with statistics fit on the train
// split this function re-derives from cfg). Throws NonFiniteLoss when a
// batch or validation loss leaves the reals.
std::pair<Model, TrainReport> train(Model model, const FeatureMatrix& matrix,
                                    const TrainConfig& cfg);

}  // namespace helpful
