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

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "helpful/pipeline.hpp"
#include "helpful/types.hpp"

namespace {

std::vector<std::string> split_csv_list(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"helpful - predicts whether Amazon product reviews will collect helpful votes"};
  app.require_subcommand(1);

  std::string config_path;
  std::string data_path;
  std::string out_dir;
  std::string lexicon_path;
  std::string features_list;
  std::vector<std::string> model_list;
  std::uint64_t seed = 0;
  double threshold = -1.0;
  std::int64_t max_text_len = -1;
  int threads = 0;

  app.add_option("--config", config_path, "JSON run configuration; flags override it");
  app.add_option("--data", data_path, "input corpus (JSON Lines, one review per line)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--lexicon", lexicon_path, "sentiment lexicon TSV (default: built-in)");
  auto* seed_opt = app.add_option("--seed", seed, "global seed; all sub-seeds derive from it");
  app.add_option("--threshold", threshold, "feature-retention threshold on |r(feature, target)|");
  app.add_option("--features", features_list,
                 "comma-separated feature list (default: retained_features.json)");
  app.add_option("--model", model_list, "model kind, repeatable: linear logistic mlp64 mlp128 mlp64deep");
  app.add_option("--max-text-len", max_text_len,
                 "drop reviews whose text exceeds this many characters (Unicode scalars)");
  app.add_option("--threads", threads, "worker threads for the parallel kernels (default 1)");

  auto* synth = app.add_subcommand("synth", "emit a synthetic review corpus");
  std::int64_t synth_n = -1;
  double synth_signal = -1.0;
  synth->add_option("--n", synth_n, "number of reviews");
  synth->add_option("--signal", synth_signal, "planted helpfulness signal strength in [0,1]");

  auto* eda = app.add_subcommand("eda", "star summary and histogram tables");
  auto* correlate = app.add_subcommand("correlate", "correlation map and feature retention");
  auto* train = app.add_subcommand("train", "train the configured models");
  auto* evaluate = app.add_subcommand("evaluate", "score saved checkpoints into a comparison table");
  auto* report = app.add_subcommand("report", "run everything and bundle the outputs");

  // Global flags may appear after the subcommand name.
  for (CLI::App* sub : {synth, eda, correlate, train, evaluate, report}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    helpful::RunConfig config;
    if (!config_path.empty()) config = helpful::load_run_config(config_path);
    if (!data_path.empty()) config.data = data_path;
    if (!out_dir.empty()) config.out = out_dir;
    if (!lexicon_path.empty()) config.lexicon = lexicon_path;
    if (seed_opt->count() > 0) config.seed = seed;
    if (threshold >= 0.0) config.selection_threshold = threshold;
    if (!features_list.empty()) config.features = split_csv_list(features_list);
    if (!model_list.empty()) config.models = model_list;
    if (max_text_len >= 0) config.filter.max_text_length = max_text_len;
    if (threads > 0) config.threads = threads;
    if (synth_n > 0) config.synth_n = synth_n;
    if (synth_signal >= 0.0) config.synth_signal = synth_signal;

    std::vector<std::string> written;
    if (synth->parsed()) {
      written = helpful::run_synth(config);
    } else if (eda->parsed()) {
      written = helpful::run_eda(config);
    } else if (correlate->parsed()) {
      written = helpful::run_correlate(config);
    } else if (train->parsed()) {
      written = helpful::run_train(config);
    } else if (evaluate->parsed()) {
      written = helpful::run_evaluate(config);
    } else if (report->parsed()) {
      written = helpful::run_report(config);
    }
    for (const std::string& path : written) std::cout << path << '\n';
  } catch (const std::exception& e) {
    std::cerr << "helpful: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
