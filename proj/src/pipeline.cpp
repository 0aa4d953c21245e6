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

#include "helpful/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "helpful/correlation.hpp"
#include "helpful/features.hpp"
#include "helpful/ingest.hpp"
#include "helpful/io.hpp"
#include "helpful/metrics.hpp"
#include "helpful/parallel.hpp"
#include "helpful/rng.hpp"
#include "helpful/synthetic.hpp"
#include "helpful/train.hpp"

namespace helpful {

namespace fs = std::filesystem;
using nlohmann::json;

TrainConfig RunConfig::train_config() const {
  TrainConfig t;
  t.learning_rate = learning_rate;
  t.beta1 = beta1;
  t.beta2 = beta2;
  t.epsilon = epsilon;
  t.weight_decay = weight_decay;
  t.batch_size = batch_size;
  t.max_epochs = max_epochs;
  t.patience = patience;
  t.split_train = split_train;
  t.split_val = split_val;
  t.split_test = split_test;
  t.seed = derive_seed(seed, "train");
  t.optimizer = optimizer_from_name(optimizer);
  return t;
}

json run_config_json(const RunConfig& c) {
  return json{
      {"data", c.data},
      {"lexicon", c.lexicon},
      {"out", c.out},
      {"seed", c.seed},
      {"threads", c.threads},
      {"filter", {{"max_text_length", c.filter.max_text_length},
                  {"require_fields", c.filter.require_fields}}},
      {"features", c.features},
      {"leave_one_out_user_avg", c.leave_one_out_user_avg},
      {"dropout_rate", c.dropout_rate},
      {"selection", {{"threshold", c.selection_threshold}, {"whitelist", c.whitelist}}},
      {"models", c.models},
      {"train",
       {{"learning_rate", c.learning_rate},
        {"beta1", c.beta1},
        {"beta2", c.beta2},
        {"epsilon", c.epsilon},
        {"weight_decay", c.weight_decay},
        {"batch_size", c.batch_size},
        {"max_epochs", c.max_epochs},
        {"patience", c.patience},
        {"split", {c.split_train, c.split_val, c.split_test}},
        {"optimizer", c.optimizer}}},
      {"eda",
       {{"text_length_bucket", c.text_length_bucket},
        {"image_bucket", c.image_bucket},
        {"vote_bucket", c.vote_bucket},
        {"histograms", [&c] {
           json list = json::array();
           for (const auto& h : c.histograms) {
             list.push_back({{"x", h.x}, {"y", h.y}, {"width", h.width}});
           }
           return list;
         }()}}},
      {"synth", {{"n", c.synth_n}, {"helpful_signal", c.synth_signal}}},
  };
}

RunConfig run_config_from_json(const json& j) {
  RunConfig c;
  c.data = j.value("data", c.data);
  c.lexicon = j.value("lexicon", c.lexicon);
  c.out = j.value("out", c.out);
  c.seed = j.value("seed", c.seed);
  c.threads = j.value("threads", c.threads);
  if (j.contains("filter")) {
    const json& f = j["filter"];
    c.filter.max_text_length = f.value("max_text_length", c.filter.max_text_length);
    c.filter.require_fields = f.value("require_fields", c.filter.require_fields);
  }
  c.features = j.value("features", c.features);
  c.leave_one_out_user_avg = j.value("leave_one_out_user_avg", c.leave_one_out_user_avg);
  c.dropout_rate = j.value("dropout_rate", c.dropout_rate);
  if (j.contains("selection")) {
    const json& s = j["selection"];
    c.selection_threshold = s.value("threshold", c.selection_threshold);
    c.whitelist = s.value("whitelist", c.whitelist);
  }
  c.models = j.value("models", c.models);
  if (j.contains("train")) {
    const json& t = j["train"];
    c.learning_rate = t.value("learning_rate", c.learning_rate);
    c.beta1 = t.value("beta1", c.beta1);
    c.beta2 = t.value("beta2", c.beta2);
    c.epsilon = t.value("epsilon", c.epsilon);
    c.weight_decay = t.value("weight_decay", c.weight_decay);
    c.batch_size = t.value("batch_size", c.batch_size);
    c.max_epochs = t.value("max_epochs", c.max_epochs);
    c.patience = t.value("patience", c.patience);
    if (t.contains("split")) {
      const json& s = t["split"];
      c.split_train = s.at(0).get<double>();
      c.split_val = s.at(1).get<double>();
      c.split_test = s.at(2).get<double>();
    }
    c.optimizer = t.value("optimizer", c.optimizer);
  }
  if (j.contains("eda")) {
    const json& e = j["eda"];
    c.text_length_bucket = e.value("text_length_bucket", c.text_length_bucket);
    c.image_bucket = e.value("image_bucket", c.image_bucket);
    c.vote_bucket = e.value("vote_bucket", c.vote_bucket);
    if (e.contains("histograms")) {
      for (const json& h : e["histograms"]) {
        c.histograms.push_back({h.at("x").get<std::string>(), h.at("y").get<std::string>(),
                                h.at("width").get<double>()});
      }
    }
  }
  if (j.contains("synth")) {
    const json& s = j["synth"];
    c.synth_n = s.value("n", c.synth_n);
    c.synth_signal = s.value("helpful_signal", c.synth_signal);
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError("invalid config JSON in " + path + ": " + e.what());
  }
  return run_config_from_json(j);
}

namespace {

std::string prepare_out(const RunConfig& config, std::vector<std::string>& written) {
  parallel::set_threads(config.threads);
  fs::create_directories(config.out);
  const std::string echo_path = (fs::path(config.out) / "run_config.json").string();
  write_text_file(echo_path, run_config_json(config).dump(2) + "\n");
  written.push_back(echo_path);
  return config.out;
}

Dataset load_input(const RunConfig& config, IngestStats* stats_out = nullptr) {
  if (config.data.empty()) throw ConfigError("no input data path configured");
  auto [dataset, stats] = load_dataset(config.data, config.filter);
  if (stats_out != nullptr) *stats_out = stats;
  return std::move(dataset);
}

SentimentLexicon resolve_lexicon(const RunConfig& config) {
  if (config.lexicon.empty()) return builtin_lexicon();
  return load_lexicon_tsv(config.lexicon);
}

bool needs_lexicon(const std::vector<std::string>& features) {
  for (const std::string& f : features) {
    if (f == "polarity" || f == "subjectivity") return true;
  }
  return false;
}

std::vector<std::string> resolve_features(const RunConfig& config) {
  if (!config.features.empty()) return config.features;
  const fs::path retained_path = fs::path(config.out) / "retained_features.json";
  std::ifstream in(retained_path);
  if (!in) {
    throw ConfigError("no feature list: pass --features or run correlate first (missing " +
                      retained_path.string() + ")");
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError("invalid retained-features JSON: " + std::string(e.what()));
  }
  const auto retained = j.at("retained").get<std::vector<std::string>>();
  if (retained.empty()) throw ConfigError("retained feature list is empty");
  return retained;
}

void write_csv(const fs::path& path, const std::string& content,
               std::vector<std::string>& written) {
  write_text_file(path.string(), content);
  written.push_back(path.string());
}

struct PreparedData {
  FeatureMatrix standardized;
  StandardizationStats stats;
  SplitIndices split;
  std::vector<std::string> feature_names;
};

PreparedData prepare_matrix(const RunConfig& config, const Dataset& dataset) {
  PreparedData prep;
  prep.feature_names = resolve_features(config);

  FeatureSpec spec;
  spec.enabled = prep.feature_names;
  spec.leave_one_out_user_avg = config.leave_one_out_user_avg;
  const SentimentLexicon lexicon =
      needs_lexicon(prep.feature_names) ? resolve_lexicon(config) : SentimentLexicon{};
  const FeatureMatrix raw = build_features(dataset, spec, lexicon);

  const TrainConfig tcfg = config.train_config();
  prep.split = split_dataset(raw, tcfg);
  prep.stats = standardize_fit(raw, prep.split.train);
  prep.standardized = standardize_apply(raw, prep.stats);
  return prep;
}

}  // namespace

std::vector<std::string> run_synth(const RunConfig& config) {
  std::vector<std::string> written;
  const fs::path out = prepare_out(config, written);
  const Dataset ds =
      generate_synthetic(config.synth_n, derive_seed(config.seed, "synthetic"),
                         config.synth_signal);
  const fs::path path = out / "synthetic.jsonl";
  write_jsonl(ds, path.string());
  written.push_back(path.string());
  return written;
}

std::vector<std::string> run_eda(const RunConfig& config) {
  std::vector<std::string> written;
  const fs::path out = prepare_out(config, written);

  IngestStats stats;
  const Dataset ds = load_input(config, &stats);

  write_text_file((out / "ingest_stats.json").string(), ingest_stats_json(stats).dump(2) + "\n");
  written.push_back((out / "ingest_stats.json").string());

  write_csv(out / "star_summary.csv", star_summary_csv(star_summary(ds)), written);

  std::vector<RunConfig::HistSpec> plots = config.histograms;
  if (plots.empty()) {
    plots = {
        {"text_length", "rating", config.text_length_bucket},
        {"text_length", "log10_count", config.text_length_bucket},
        {"image_count", "rating", config.image_bucket},
        {"image_count", "helpful_vote", config.image_bucket},
        {"image_count", "log10_count", config.image_bucket},
        {"helpful_vote", "count", config.vote_bucket},
        {"rating", "helpful_vote", 1.0},
        {"rating", "count", 1.0},
    };
  }
  for (const auto& plot : plots) {
    const Histogram hist =
        bucketed_mean(ds, x_field_from_name(plot.x), y_field_from_name(plot.y), plot.width);
    write_csv(out / ("hist_" + plot.x + "_" + plot.y + ".csv"), histogram_csv(hist), written);
  }
  return written;
}

std::vector<std::string> run_correlate(const RunConfig& config) {
  std::vector<std::string> written;
  const fs::path out = prepare_out(config, written);

  const Dataset ds = load_input(config);
  FeatureSpec spec;
  spec.enabled = kAllFeatures;
  spec.leave_one_out_user_avg = config.leave_one_out_user_avg;
  const FeatureMatrix matrix = build_features(ds, spec, resolve_lexicon(config));
  const CorrelationMatrix corr = correlation_matrix(matrix);

  write_csv(out / "correlation_matrix.csv", correlation_csv(corr), written);

  const std::vector<std::string> retained =
      retain_features(corr, config.selection_threshold, config.whitelist);
  const std::size_t target =
      static_cast<std::size_t>(std::find(corr.names.begin(), corr.names.end(), kTargetName) -
                               corr.names.begin());
  json with_target = json::object();
  for (std::size_t i = 0; i < corr.size(); ++i) {
    if (i == target) continue;
    if (corr.is_defined(i, target)) {
      with_target[corr.names[i]] = corr.at(i, target);
    } else {
      with_target[corr.names[i]] = nullptr;
    }
  }
  const json retained_json{{"threshold", config.selection_threshold},
                           {"whitelist", config.whitelist},
                           {"correlation_with_target", with_target},
                           {"retained", retained},
                           {"seed", config.seed}};
  write_text_file((out / "retained_features.json").string(), retained_json.dump(2) + "\n");
  written.push_back((out / "retained_features.json").string());
  return written;
}

std::vector<std::string> run_train(const RunConfig& config) {
  std::vector<std::string> written;
  const fs::path out = prepare_out(config, written);

  const Dataset ds = load_input(config);
  const PreparedData prep = prepare_matrix(config, ds);
  const TrainConfig tcfg = config.train_config();

  for (const std::string& kind_name : config.models) {
    ModelConfig mcfg;
    mcfg.kind = model_kind_from_name(kind_name);
    mcfg.input_dim = static_cast<int>(prep.feature_names.size());
    mcfg.dropout_rate = config.dropout_rate;
    mcfg.seed = derive_seed(config.seed, "init:" + kind_name);

    auto [model, report] = train(init_model(mcfg), prep.standardized, tcfg);

    Checkpoint ckpt{std::move(model), prep.stats, prep.feature_names};
    const fs::path ckpt_path = out / ("checkpoint_" + kind_name + ".json");
    save_checkpoint(ckpt, ckpt_path.string());
    written.push_back(ckpt_path.string());

    const fs::path report_path = out / ("train_report_" + kind_name + ".json");
    write_text_file(report_path.string(), train_report_json(report).dump(2) + "\n");
    written.push_back(report_path.string());
  }
  return written;
}

std::vector<std::string> run_evaluate(const RunConfig& config) {
  std::vector<std::string> written;
  const fs::path out = prepare_out(config, written);

  const Dataset ds = load_input(config);
  const TrainConfig tcfg = config.train_config();

  std::vector<ComparisonRow> rows;
  for (const std::string& kind_name : config.models) {
    const fs::path ckpt_path = out / ("checkpoint_" + kind_name + ".json");
    const Checkpoint ckpt = load_checkpoint(ckpt_path.string());

    FeatureSpec spec;
    spec.enabled = ckpt.feature_names;
    spec.leave_one_out_user_avg = config.leave_one_out_user_avg;
    const SentimentLexicon lexicon =
        needs_lexicon(ckpt.feature_names) ? resolve_lexicon(config) : SentimentLexicon{};
    const FeatureMatrix raw = build_features(ds, spec, lexicon);
    const FeatureMatrix standardized = standardize_apply(raw, ckpt.stats);
    const SplitIndices split = split_dataset(standardized, tcfg);

    rows.push_back({kind_name, evaluate_model(ckpt.model, standardized, split.test)});
  }
  write_csv(out / "model_comparison.csv", model_comparison_csv(rows), written);
  return written;
}

std::vector<std::string> run_report(const RunConfig& config) {
  std::vector<std::string> written = run_eda(config);
  auto append = [&written](std::vector<std::string> more) {
    for (auto& p : more) {
      if (std::find(written.begin(), written.end(), p) == written.end()) {
        written.push_back(std::move(p));
      }
    }
  };
  append(run_correlate(config));
  append(run_train(config));
  append(run_evaluate(config));

  const fs::path out(config.out);

  // Feature-matrix export for the trained feature set.
  const Dataset ds = load_input(config);
  const PreparedData prep = prepare_matrix(config, ds);
  write_csv(out / "features.csv", feature_matrix_csv(prep.standardized), written);

  // One bundle of the tables and figures above, keyed by file stem. The raw
  // feature matrix stays out; it can be arbitrarily large.
  json bundle = json::object();
  for (const std::string& path_str : written) {
    const fs::path path(path_str);
    if (path.filename() == "report.json" || path.filename() == "features.csv") continue;
    std::ifstream in(path);
    if (!in) continue;
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (path.extension() == ".json") {
      bundle[path.stem().string()] = json::parse(content);
    } else if (path.extension() == ".csv") {
      bundle[path.stem().string()] = content;
    }
  }
  const fs::path report_path = out / "report.json";
  write_text_file(report_path.string(), bundle.dump(2) + "\n");
  written.push_back(report_path.string());
  return written;
}

}  // namespace helpful
