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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "helpful/model.hpp"
#include "helpful/types.hpp"

namespace helpful {

enum class Optimizer { kAdam, kAdamW };

Optimizer optimizer_from_name(const std::string& name);
const std::string& optimizer_name(Optimizer opt);

struct TrainConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.01;  // AdamW only, decoupled
  int batch_size = 256;
  int max_epochs = 200;
  int patience = 9;  // consecutive non-improving validation epochs tolerated
  double split_train = 0.8;
  double split_val = 0.1;
  double split_test = 0.1;
  std::uint64_t seed = 0;
  Optimizer optimizer = Optimizer::kAdam;

  void validate() const;
};

// Binary cross-entropy of predictions against 0/1 labels, predictions
// clipped into [1e-7, 1 - 1e-7] before the logs.
double bce_loss(std::span<const double> yhat, std::span<const std::uint8_t> y);

double mse_loss(std::span<const double> yhat, std::span<const double> y);

// First/second moment estimates per tensor, tensors ordered layer by layer
// as (W, b) pairs.
struct AdamState {
  struct Slot {
    std::vector<double> m;
    std::vector<double> v;
  };
  std::vector<Slot> weights;
  std::vector<Slot> biases;
  long t = 0;
};

AdamState init_adam_state(const Model& model);

// One bias-corrected Adam update on a flat tensor, with t already advanced:
//   m <- b1 m + (1-b1) g;  v <- b2 v + (1-b2) g^2
//   theta <- theta - lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps)
void adam_update(std::span<double> theta, std::span<const double> grad, std::span<double> m,
                 std::span<double> v, long t, const TrainConfig& cfg);

// Whole-model steps; both advance state.t once. adamw_step additionally
// applies decoupled decay theta <- theta - lr * weight_decay * theta to the
// weight matrices (never to biases) after the Adam update.
void adam_step(Model& model, const Gradients& grads, AdamState& state, const TrainConfig& cfg);
void adamw_step(Model& model, const Gradients& grads, AdamState& state, const TrainConfig& cfg);

}  // namespace helpful
