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

#include "helpful/model.hpp"

#include <cmath>

#include "helpful/parallel.hpp"

namespace helpful {

namespace {

constexpr double kProbClip = 1e-7;

const std::pair<ModelKind, const char*> kKindNames[] = {
    {ModelKind::kLinear, "linear"},       {ModelKind::kLogistic, "logistic"},
    {ModelKind::kMlp64, "mlp64"},         {ModelKind::kMlp128, "mlp128"},
    {ModelKind::kMlp64Deep, "mlp64deep"},
};

}  // namespace

ModelKind model_kind_from_name(const std::string& name) {
  for (const auto& [kind, kname] : kKindNames) {
    if (name == kname) return kind;
  }
  throw ConfigError("unknown model kind: " + name);
}

const std::string& model_kind_name(ModelKind kind) {
  static const std::string names[] = {"linear", "logistic", "mlp64", "mlp128", "mlp64deep"};
  return names[static_cast<int>(kind)];
}

std::vector<int> layer_dims(ModelKind kind, int input_dim) {
  switch (kind) {
    case ModelKind::kLinear:
    case ModelKind::kLogistic:
      return {input_dim, 1};
    case ModelKind::kMlp64:
      return {input_dim, 64, 32, 1};
    case ModelKind::kMlp128:
      return {input_dim, 128, 1};
    case ModelKind::kMlp64Deep:
      return {input_dim, 64, 32, 32, 32, 1};
  }
  throw ConfigError("unknown model kind");
}

void ModelConfig::validate() const {
  if (input_dim < 1) throw ConfigError("model input_dim must be >= 1");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw ConfigError("dropout_rate must lie in [0, 1)");
  }
}

std::size_t Model::parameter_count() const {
  std::size_t n = 0;
  for (const DenseLayer& l : layers) n += l.w.size() + l.b.size();
  return n;
}

Model init_model(const ModelConfig& config) {
  config.validate();
  Model m;
  m.config = config;

  Rng rng(config.seed);
  const std::vector<int> dims = layer_dims(config.kind, config.input_dim);
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    DenseLayer layer;
    layer.in = dims[l];
    layer.out = dims[l + 1];
    layer.w.resize(static_cast<std::size_t>(layer.out) * layer.in);
    layer.b.assign(static_cast<std::size_t>(layer.out), 0.0);
    const double limit = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
    for (double& w : layer.w) w = rng.uniform(-limit, limit);
    m.layers.push_back(std::move(layer));
  }
  return m;
}

double sigmoid(double z) {
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

ForwardTrace forward(const Model& model, std::span<const double> x, Mode mode, Rng* mask_rng) {
  if (x.size() != static_cast<std::size_t>(model.config.input_dim)) {
    throw DimensionMismatch("forward: input has wrong dimension");
  }
  const std::size_t n_layers = model.layers.size();
  const double p = model.config.dropout_rate;
  const bool drop = mode == Mode::kTrain && p > 0.0;

  ForwardTrace trace;
  trace.pre.resize(n_layers);
  trace.act.resize(n_layers);
  trace.mask.resize(n_layers);

  std::vector<double> input(x.begin(), x.end());
  for (std::size_t l = 0; l < n_layers; ++l) {
    const DenseLayer& layer = model.layers[l];
    std::vector<double>& z = trace.pre[l];
    z.resize(static_cast<std::size_t>(layer.out));
    for (int o = 0; o < layer.out; ++o) {
      const double* wrow = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
      double acc = layer.b[static_cast<std::size_t>(o)];
      for (int i = 0; i < layer.in; ++i) acc += wrow[i] * input[static_cast<std::size_t>(i)];
      z[static_cast<std::size_t>(o)] = acc;
    }

    const bool is_output = l + 1 == n_layers;
    if (is_output) {
      trace.yhat = model.config.kind == ModelKind::kLinear ? z[0] : sigmoid(z[0]);
      trace.act[l] = {trace.yhat};
    } else {
      std::vector<double>& a = trace.act[l];
      a.resize(z.size());
      if (drop) {
        std::vector<double>& mask = trace.mask[l];
        mask.resize(z.size());
        const double keep_scale = 1.0 / (1.0 - p);
        for (std::size_t u = 0; u < z.size(); ++u) {
          mask[u] = mask_rng->uniform() < p ? 0.0 : keep_scale;
          a[u] = mask[u] * std::max(0.0, z[u]);
        }
      } else {
        for (std::size_t u = 0; u < z.size(); ++u) a[u] = std::max(0.0, z[u]);
      }
      input = a;
    }
  }
  return trace;
}

double predict(const Model& model, std::span<const double> x) {
  return forward(model, x, Mode::kEval, nullptr).yhat;
}

void Gradients::add(const Gradients& other) {
  for (std::size_t l = 0; l < w.size(); ++l) {
    for (std::size_t i = 0; i < w[l].size(); ++i) w[l][i] += other.w[l][i];
    for (std::size_t i = 0; i < b[l].size(); ++i) b[l][i] += other.b[l][i];
  }
}

Gradients zero_gradients(const Model& model) {
  Gradients g;
  g.w.resize(model.layers.size());
  g.b.resize(model.layers.size());
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    g.w[l].assign(model.layers[l].w.size(), 0.0);
    g.b[l].assign(model.layers[l].b.size(), 0.0);
  }
  return g;
}

namespace {

// Per-example loss and gradient accumulation. delta_out is dLoss/dz for the
// output pre-activation of this example, already divided by the batch size.
void backprop_example(const Model& model, const ForwardTrace& trace,
                      std::span<const double> x, double delta_out, Gradients& grads) {
  const std::size_t n_layers = model.layers.size();
  std::vector<double> delta = {delta_out};

  for (std::size_t li = n_layers; li-- > 0;) {
    const DenseLayer& layer = model.layers[li];
    const double* input = li == 0 ? x.data() : trace.act[li - 1].data();

    double* gw = grads.w[li].data();
    double* gb = grads.b[li].data();
    for (int o = 0; o < layer.out; ++o) {
      const double d = delta[static_cast<std::size_t>(o)];
      gb[o] += d;
      double* grow = gw + static_cast<std::size_t>(o) * layer.in;
      for (int i = 0; i < layer.in; ++i) grow[i] += d * input[i];
    }

    if (li == 0) break;
    // delta for the layer below: W^T delta, gated by dropout mask and ReLU.
    std::vector<double> next(static_cast<std::size_t>(layer.in), 0.0);
    for (int o = 0; o < layer.out; ++o) {
      const double d = delta[static_cast<std::size_t>(o)];
      const double* wrow = layer.w.data() + static_cast<std::size_t>(o) * layer.in;
      for (int i = 0; i < layer.in; ++i) next[static_cast<std::size_t>(i)] += d * wrow[i];
    }
    const std::vector<double>& z = trace.pre[li - 1];
    const std::vector<double>& mask = trace.mask[li - 1];
    for (std::size_t u = 0; u < next.size(); ++u) {
      const double gate = (z[u] > 0.0 ? 1.0 : 0.0) * (mask.empty() ? 1.0 : mask[u]);
      next[u] *= gate;
    }
    delta = std::move(next);
  }
}

double example_loss(ModelKind kind, double yhat, double y) {
  if (kind == ModelKind::kLinear) {
    const double r = yhat - y;
    return r * r;
  }
  const double clipped = std::min(std::max(yhat, kProbClip), 1.0 - kProbClip);
  return -(y * std::log(clipped) + (1.0 - y) * std::log(1.0 - clipped));
}

struct ChunkPartial {
  double loss_sum = 0.0;
  Gradients grads;
};

ChunkPartial process_chunk(const Model& model, const FeatureMatrix& matrix,
                           std::span<const int> rows, std::size_t begin, std::size_t end,
                           Mode mode, std::uint64_t mask_seed, double inv_n) {
  ChunkPartial part;
  part.grads = zero_gradients(model);
  for (std::size_t k = begin; k < end; ++k) {
    const int row = rows[k];
    const std::span<const double> x = matrix.row(static_cast<std::size_t>(row));
    const double y = static_cast<double>(matrix.labels[static_cast<std::size_t>(row)]);

    Rng mask_rng(mix64(mask_seed, static_cast<std::uint64_t>(k)));
    const ForwardTrace trace = forward(model, x, mode, &mask_rng);

    part.loss_sum += example_loss(model.config.kind, trace.yhat, y);
    // dLoss/dz at the output: (yhat - y) for sigmoid + BCE, 2(yhat - y) for
    // the linear + MSE baseline; both scaled by 1/N for the batch mean.
    const double delta = model.config.kind == ModelKind::kLinear
                             ? 2.0 * (trace.yhat - y) * inv_n
                             : (trace.yhat - y) * inv_n;
    backprop_example(model, trace, x, delta, part.grads);
  }
  return part;
}

BatchResult batch_gradients_impl(const Model& model, const FeatureMatrix& matrix,
                                 std::span<const int> rows, Mode mode, std::uint64_t mask_seed,
                                 bool use_omp) {
  if (rows.empty()) throw DimensionMismatch("gradient batch is empty");
  if (matrix.n_cols() != static_cast<std::size_t>(model.config.input_dim)) {
    throw DimensionMismatch("matrix width does not match model input_dim");
  }

  const std::size_t n_chunks = parallel::chunk_count(rows.size());
  const double inv_n = 1.0 / static_cast<double>(rows.size());
  std::vector<ChunkPartial> parts(n_chunks);

  const std::int64_t nc = static_cast<std::int64_t>(n_chunks);
#pragma omp parallel for schedule(dynamic) if (use_omp && parallel::threads() > 1)
  for (std::int64_t c = 0; c < nc; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * parallel::kChunk;
    const std::size_t end = std::min(begin + parallel::kChunk, rows.size());
    parts[static_cast<std::size_t>(c)] =
        process_chunk(model, matrix, rows, begin, end, mode, mask_seed, inv_n);
  }

  BatchResult result;
  result.grads = std::move(parts[0].grads);
  double loss_sum = parts[0].loss_sum;
  for (std::size_t c = 1; c < n_chunks; ++c) {
    result.grads.add(parts[c].grads);
    loss_sum += parts[c].loss_sum;
  }
  result.loss = loss_sum * inv_n;
  return result;
}

double dataset_loss_impl(const Model& model, const FeatureMatrix& matrix,
                         std::span<const int> rows, bool use_omp) {
  if (rows.empty()) throw DimensionMismatch("loss over an empty row set");
  const std::size_t n_chunks = parallel::chunk_count(rows.size());
  std::vector<double> partial(n_chunks, 0.0);

  const std::int64_t nc = static_cast<std::int64_t>(n_chunks);
#pragma omp parallel for schedule(dynamic) if (use_omp && parallel::threads() > 1)
  for (std::int64_t c = 0; c < nc; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * parallel::kChunk;
    const std::size_t end = std::min(begin + parallel::kChunk, rows.size());
    double sum = 0.0;
    for (std::size_t k = begin; k < end; ++k) {
      const int row = rows[k];
      const double yhat = predict(model, matrix.row(static_cast<std::size_t>(row)));
      sum += example_loss(model.config.kind, yhat,
                          static_cast<double>(matrix.labels[static_cast<std::size_t>(row)]));
    }
    partial[static_cast<std::size_t>(c)] = sum;
  }

  double total = 0.0;
  for (double s : partial) total += s;
  return total / static_cast<double>(rows.size());
}

}  // namespace

BatchResult batch_gradients(const Model& model, const FeatureMatrix& matrix,
                            std::span<const int> rows, Mode mode, std::uint64_t mask_seed) {
  return batch_gradients_impl(model, matrix, rows, mode, mask_seed, true);
}

BatchResult batch_gradients_serial(const Model& model, const FeatureMatrix& matrix,
                                   std::span<const int> rows, Mode mode,
                                   std::uint64_t mask_seed) {
  return batch_gradients_impl(model, matrix, rows, mode, mask_seed, false);
}

double dataset_loss(const Model& model, const FeatureMatrix& matrix, std::span<const int> rows) {
  return dataset_loss_impl(model, matrix, rows, true);
}

double dataset_loss_serial(const Model& model, const FeatureMatrix& matrix,
                           std::span<const int> rows) {
  return dataset_loss_impl(model, matrix, rows, false);
}

}  // namespace helpful
