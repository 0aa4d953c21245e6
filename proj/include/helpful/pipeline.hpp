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

#include <string>
#include <vector>

#include <json.hpp>

#include "helpful/optim.hpp"
#include "helpful/types.hpp"

namespace helpful {

// One configuration drives every subcommand. All stochastic sub-seeds (init,
// split, shuffle, dropout, synthetic) are derived from the single global
// seed, so two runs with equal configs write byte-identical outputs.
struct RunConfig {
  std::string data;     // input JSON Lines corpus
  std::string lexicon;  // sentiment lexicon TSV; empty selects the built-in
  std::string out = "out";
  std::uint64_t seed = 42;
  int threads = 1;

  IngestFilter filter;
  std::vector<std::string> features;  // empty: consume retained_features.json
  bool leave_one_out_user_avg = false;
  double dropout_rate = 0.2;

  double selection_threshold = 0.1;
  std::vector<std::string> whitelist;

  std::vector<std::string> models = {"linear", "logistic", "mlp64", "mlp128", "mlp64deep"};

  // Optimizer and loop settings; the sub-seed is derived, never configured.
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double weight_decay = 0.01;
  int batch_size = 256;
  int max_epochs = 200;
  int patience = 9;
  double split_train = 0.8;
  double split_val = 0.1;
  double split_test = 0.1;
  std::string optimizer = "adam";

  // EDA bucket widths for the default histogram set.
  double text_length_bucket = 70.0;
  double image_bucket = 1.0;
  double vote_bucket = 10.0;

  // Explicit histogram list; empty selects the default set derived from the
  // widths above. Each entry is (x field, y field, bucket width).
  struct HistSpec {
    std::string x;
    std::string y;
    double width = 1.0;
  };
  std::vector<HistSpec> histograms;

  // Synthetic corpus settings for the synth subcommand.
  std::int64_t synth_n = 10000;
  double synth_signal = 0.9;

  TrainConfig train_config() const;
};

nlohmann::json run_config_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

// Subcommand drivers. Each creates the output directory, writes
// run_config.json beside its outputs, and returns the paths it wrote.
std::vector<std::string> run_synth(const RunConfig& config);
std::vector<std::string> run_eda(const RunConfig& config);
std::vector<std::string> run_correlate(const RunConfig& config);
std::vector<std::string> run_train(const RunConfig& config);
std::vector<std::string> run_evaluate(const RunConfig& config);
std::vector<std::string> run_report(const RunConfig& config);

}  // namespace helpful
