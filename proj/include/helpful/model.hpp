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

#include "helpful/features.hpp"
#include "helpful/rng.hpp"
#include "helpful/types.hpp"

namespace helpful {

enum class ModelKind { kLinear, kLogistic, kMlp64, kMlp128, kMlp64Deep };

ModelKind model_kind_from_name(const std::string& name);
const std::string& model_kind_name(ModelKind kind);

// Layer widths per kind, input first: mlp64 = d-64-32-1, mlp128 = d-128-1,
// mlp64deep = d-64-32-32-32-1; the baselines are a single d-1 layer.
std::vector<int> layer_dims(ModelKind kind, int input_dim);

struct ModelConfig {
  ModelKind kind = ModelKind::kLogistic;
  int input_dim = 0;
  double dropout_rate = 0.2;  // applied after every hidden activation
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const ModelConfig&) const = default;
};

struct DenseLayer {
  int out = 0;
  int in = 0;
  std::vector<double> w;  // row-major, out x in
  std::vector<double> b;  // out

  bool operator==(const DenseLayer&) const = default;
};

struct Model {
  ModelConfig config;
  std::vector<DenseLayer> layers;

  std::size_t parameter_count() const;
  bool operator==(const Model&) const = default;
};

// Glorot-style uniform initialization, W ~ U(-sqrt(6/(fan_in+fan_out)), +..),
// biases zero, drawn from a deterministic stream seeded by config.seed.
Model init_model(const ModelConfig& config);

enum class Mode { kTrain, kEval };

// Per-layer intermediates kept for backpropagation. mask entries are
// 0 or 1/(1-p) (inverted dropout); empty in eval mode.
struct ForwardTrace {
  std::vector<std::vector<double>> pre;   // pre-activations z_l
  std::vector<std::vector<double>> act;   // post dropout activations a_l
  std::vector<std::vector<double>> mask;  // dropout masks per hidden layer
  double yhat = 0.0;
};

// Hidden layers use ReLU; the output is sigmoid except for the linear kind,
// which emits the raw affine value. In train mode each hidden activation is
// multiplied by an inverted-dropout mask drawn from mask_rng; in eval mode
// dropout is the identity and mask_rng may be null.
ForwardTrace forward(const Model& model, std::span<const double> x, Mode mode, Rng* mask_rng);

// Eval-mode forward output.
double predict(const Model& model, std::span<const double> x);

// 1 iff p >= threshold. Linear-kind outputs are thresholded directly.
inline int classify(double p, double threshold) { return p >= threshold ? 1 : 0; }

double sigmoid(double z);

struct Gradients {
  std::vector<std::vector<double>> w;  // matches layer shapes
  std::vector<std::vector<double>> b;

  void add(const Gradients& other);
  bool operator==(const Gradients&) const = default;
};

Gradients zero_gradients(const Model& model);

struct BatchResult {
  double loss = 0.0;  // batch-mean loss (BCE, or MSE for the linear kind)
  Gradients grads;    // gradient of that mean
};

// Exact analytic gradients of the batch-mean loss through the dropout masks
// actually sampled. Masks for row k of the batch come from a stream seeded
// with mix64(mask_seed, k), so results do not depend on evaluation order and
// a caller can replay the identical stochastic loss (finite differences rely
// on this). Rows are accumulated in fixed chunks; the OpenMP kernel and the
// serial reference are bitwise identical.
BatchResult batch_gradients(const Model& model, const FeatureMatrix& matrix,
                            std::span<const int> rows, Mode mode, std::uint64_t mask_seed);
BatchResult batch_gradients_serial(const Model& model, const FeatureMatrix& matrix,
                                   std::span<const int> rows, Mode mode, std::uint64_t mask_seed);

// Mean eval-mode loss over the given rows (no dropout, no gradients).
double dataset_loss(const Model& model, const FeatureMatrix& matrix, std::span<const int> rows);
double dataset_loss_serial(const Model& model, const FeatureMatrix& matrix,
                           std::span<const int> rows);

}  // namespace helpful
