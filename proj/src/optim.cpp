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

#include "helpful/optim.hpp"

#include <cmath>

namespace helpful {

Optimizer optimizer_from_name(const std::string& name) {
  if (name == "adam") return Optimizer::kAdam;
  if (name == "adamw") return Optimizer::kAdamW;
  throw ConfigError("unknown optimizer: " + name);
}

const std::string& optimizer_name(Optimizer opt) {
  static const std::string names[] = {"adam", "adamw"};
  return names[static_cast<int>(opt)];
}

void TrainConfig::validate() const {
  if (learning_rate <= 0.0) throw ConfigError("learning_rate must be positive");
  if (!(beta1 > 0.0 && beta1 < 1.0)) throw ConfigError("beta1 must lie in (0, 1)");
  if (!(beta2 > 0.0 && beta2 < 1.0)) throw ConfigError("beta2 must lie in (0, 1)");
  if (epsilon <= 0.0) throw ConfigError("epsilon must be positive");
  if (weight_decay < 0.0) throw ConfigError("weight_decay must be >= 0");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
  if (patience < 1) throw ConfigError("patience must be >= 1");
  if (!(split_train > 0.0 && split_val > 0.0 && split_test > 0.0)) {
    throw ConfigError("split fractions must be positive");
  }
  if (std::abs(split_train + split_val + split_test - 1.0) > 1e-12) {
    throw ConfigError("split fractions must sum to 1");
  }
}

double bce_loss(std::span<const double> yhat, std::span<const std::uint8_t> y) {
  if (yhat.size() != y.size()) throw LengthMismatch("bce_loss: lengths differ");
  if (yhat.empty()) throw LengthMismatch("bce_loss: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < yhat.size(); ++i) {
    const double p = std::min(std::max(yhat[i], 1e-7), 1.0 - 1e-7);
    sum += y[i] != 0 ? std::log(p) : std::log(1.0 - p);
  }
  return -sum / static_cast<double>(yhat.size());
}

double mse_loss(std::span<const double> yhat, std::span<const double> y) {
  if (yhat.size() != y.size()) throw LengthMismatch("mse_loss: lengths differ");
  if (yhat.empty()) throw LengthMismatch("mse_loss: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < yhat.size(); ++i) {
    const double r = yhat[i] - y[i];
    sum += r * r;
  }
  return sum / static_cast<double>(yhat.size());
}

AdamState init_adam_state(const Model& model) {
  AdamState state;
  state.weights.resize(model.layers.size());
  state.biases.resize(model.layers.size());
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    state.weights[l].m.assign(model.layers[l].w.size(), 0.0);
    state.weights[l].v.assign(model.layers[l].w.size(), 0.0);
    state.biases[l].m.assign(model.layers[l].b.size(), 0.0);
    state.biases[l].v.assign(model.layers[l].b.size(), 0.0);
  }
  return state;
}

void adam_update(std::span<double> theta, std::span<const double> grad, std::span<double> m,
                 std::span<double> v, long t, const TrainConfig& cfg) {
  if (theta.size() != grad.size() || theta.size() != m.size() || theta.size() != v.size()) {
    throw ShapeMismatch("adam_update: tensor shapes disagree");
  }
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
  for (std::size_t i = 0; i < theta.size(); ++i) {
    m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * grad[i];
    v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
    const double m_hat = m[i] / bc1;
    const double v_hat = v[i] / bc2;
    theta[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
  }
}

namespace {

void step_impl(Model& model, const Gradients& grads, AdamState& state, const TrainConfig& cfg,
               bool decay_weights) {
  if (grads.w.size() != model.layers.size()) {
    throw ShapeMismatch("gradient layer count does not match model");
  }
  ++state.t;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    DenseLayer& layer = model.layers[l];
    if (grads.w[l].size() != layer.w.size() || grads.b[l].size() != layer.b.size()) {
      throw ShapeMismatch("gradient tensor shape does not match layer");
    }
    if (decay_weights) {
      // Decoupled decay against the pre-update weights:
      //   theta <- theta - lr * (mhat / (sqrt(vhat) + eps) + lambda * theta)
      const double shrink = cfg.learning_rate * cfg.weight_decay;
      for (double& w : layer.w) w -= shrink * w;
    }
    adam_update(layer.w, grads.w[l], state.weights[l].m, state.weights[l].v, state.t, cfg);
    adam_update(layer.b, grads.b[l], state.biases[l].m, state.biases[l].v, state.t, cfg);
  }
}

}  // namespace

void adam_step(Model& model, const Gradients& grads, AdamState& state, const TrainConfig& cfg) {
  step_impl(model, grads, state, cfg, false);
}

void adamw_step(Model& model, const Gradients& grads, AdamState& state, const TrainConfig& cfg) {
  step_impl(model, grads, state, cfg, true);
}

}  // namespace helpful
