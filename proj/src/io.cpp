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

#include "helpful/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace helpful {

using nlohmann::json;

std::string fmt_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write failure on " + path);
}

std::string feature_matrix_csv(const FeatureMatrix& matrix) {
  std::ostringstream out;
  for (const std::string& name : matrix.columns) out << name << ',';
  out << "label\n";
  for (std::size_t r = 0; r < matrix.n_rows; ++r) {
    for (std::size_t c = 0; c < matrix.n_cols(); ++c) {
      out << fmt_double(matrix.at(r, c)) << ',';
    }
    out << static_cast<int>(matrix.labels[r]) << '\n';
  }
  return out.str();
}

std::string correlation_csv(const CorrelationMatrix& corr) {
  std::ostringstream out;
  out << "name";
  for (const std::string& n : corr.names) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < corr.size(); ++i) {
    out << corr.names[i];
    for (std::size_t j = 0; j < corr.size(); ++j) {
      out << ',';
      if (corr.is_defined(i, j)) {
        out << fmt_double(corr.at(i, j));
      } else {
        out << "NA";
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string star_summary_csv(const std::vector<StarRow>& rows) {
  std::ostringstream out;
  out << "star,count,mean_helpful_votes\n";
  for (const StarRow& row : rows) {
    out << row.star << ',' << row.count << ',';
    if (row.has_mean) out << fmt_double(row.mean_helpful_votes);
    out << '\n';
  }
  return out.str();
}

std::string histogram_csv(const Histogram& hist) {
  std::ostringstream out;
  out << "bucket_lo,bucket_hi,count,value\n";
  for (const auto& b : hist.buckets) {
    out << fmt_double(b.lo) << ',' << fmt_double(b.hi) << ',' << b.count << ',';
    if (b.has_value) out << fmt_double(b.value);
    out << '\n';
  }
  return out.str();
}

std::string model_comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "model,accuracy,mse\n";
  for (const ComparisonRow& row : rows) {
    out << row.name << ',' << fmt_double(row.metrics.accuracy) << ',';
    if (row.metrics.mse.has_value()) out << fmt_double(*row.metrics.mse);
    out << '\n';
  }
  return out.str();
}

json ingest_stats_json(const IngestStats& stats) {
  return json{{"read", stats.read},
              {"retained", stats.retained},
              {"dropped_malformed", stats.dropped_malformed},
              {"dropped_filtered", stats.dropped_filtered}};
}

json model_config_json(const ModelConfig& config) {
  return json{{"kind", model_kind_name(config.kind)},
              {"input_dim", config.input_dim},
              {"dropout_rate", config.dropout_rate},
              {"seed", config.seed}};
}

ModelConfig model_config_from_json(const json& j) {
  ModelConfig c;
  c.kind = model_kind_from_name(j.at("kind").get<std::string>());
  c.input_dim = j.at("input_dim").get<int>();
  c.dropout_rate = j.at("dropout_rate").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

json train_config_json(const TrainConfig& config) {
  return json{{"learning_rate", config.learning_rate},
              {"beta1", config.beta1},
              {"beta2", config.beta2},
              {"epsilon", config.epsilon},
              {"weight_decay", config.weight_decay},
              {"batch_size", config.batch_size},
              {"max_epochs", config.max_epochs},
              {"patience", config.patience},
              {"split", {config.split_train, config.split_val, config.split_test}},
              {"seed", config.seed},
              {"optimizer", optimizer_name(config.optimizer)}};
}

TrainConfig train_config_from_json(const json& j) {
  TrainConfig c;
  c.learning_rate = j.at("learning_rate").get<double>();
  c.beta1 = j.at("beta1").get<double>();
  c.beta2 = j.at("beta2").get<double>();
  c.epsilon = j.at("epsilon").get<double>();
  c.weight_decay = j.at("weight_decay").get<double>();
  c.batch_size = j.at("batch_size").get<int>();
  c.max_epochs = j.at("max_epochs").get<int>();
  c.patience = j.at("patience").get<int>();
  const auto& split = j.at("split");
  c.split_train = split.at(0).get<double>();
  c.split_val = split.at(1).get<double>();
  c.split_test = split.at(2).get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.optimizer = optimizer_from_name(j.at("optimizer").get<std::string>());
  return c;
}

json train_report_json(const TrainReport& report) {
  json metrics{{"accuracy", report.test_metrics.accuracy}, {"n", report.test_metrics.n}};
  if (report.test_metrics.mse.has_value()) metrics["mse"] = *report.test_metrics.mse;
  return json{{"train_loss", report.train_loss},
              {"val_loss", report.val_loss},
              {"best_epoch", report.best_epoch},
              {"stop_reason", report.stop_reason},
              {"test_metrics", metrics},
              {"model_config", model_config_json(report.model_config)},
              {"train_config", train_config_json(report.train_config)}};
}

json checkpoint_json(const Checkpoint& ckpt) {
  json layers = json::array();
  for (const DenseLayer& l : ckpt.model.layers) {
    layers.push_back(json{{"out", l.out}, {"in", l.in}, {"w", l.w}, {"b", l.b}});
  }
  json stats{{"mean", ckpt.stats.mean},
             {"std", ckpt.stats.stddev},
             {"constant", ckpt.stats.constant}};
  return json{{"config", model_config_json(ckpt.model.config)},
              {"layers", layers},
              {"standardization", stats},
              {"features", ckpt.feature_names}};
}

Checkpoint checkpoint_from_json(const json& j) {
  Checkpoint ckpt;
  ckpt.model.config = model_config_from_json(j.at("config"));
  for (const json& lj : j.at("layers")) {
    DenseLayer l;
    l.out = lj.at("out").get<int>();
    l.in = lj.at("in").get<int>();
    l.w = lj.at("w").get<std::vector<double>>();
    l.b = lj.at("b").get<std::vector<double>>();
    if (l.w.size() != static_cast<std::size_t>(l.out) * l.in ||
        l.b.size() != static_cast<std::size_t>(l.out)) {
      throw IoError("checkpoint layer shape does not match its payload");
    }
    ckpt.model.layers.push_back(std::move(l));
  }
  const json& stats = j.at("standardization");
  ckpt.stats.mean = stats.at("mean").get<std::vector<double>>();
  ckpt.stats.stddev = stats.at("std").get<std::vector<double>>();
  ckpt.stats.constant = stats.at("constant").get<std::vector<std::uint8_t>>();
  ckpt.feature_names = j.at("features").get<std::vector<std::string>>();
  if (ckpt.feature_names.size() != static_cast<std::size_t>(ckpt.model.config.input_dim)) {
    throw IoError("checkpoint feature list does not match input_dim");
  }
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  write_text_file(path, checkpoint_json(ckpt).dump(2) + "\n");
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checkpoint " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError("invalid checkpoint JSON in " + path + ": " + e.what());
  }
  return checkpoint_from_json(j);
}

}  // namespace helpful
