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

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "helpful/io.hpp"
#include "helpful/pipeline.hpp"
#include "helpful/rng.hpp"
#include "test_util.hpp"

using namespace helpful;
using nlohmann::json;
using test_util::TempDir;
using test_util::read_file;

namespace {

// Small, fast settings shared by the pipeline tests.
RunConfig small_config(const std::string& out) {
  RunConfig cfg;
  cfg.out = out;
  cfg.seed = 424242;
  cfg.synth_n = 1500;
  cfg.synth_signal = 0.9;
  cfg.max_epochs = 12;
  cfg.batch_size = 128;
  cfg.models = {"linear", "logistic", "mlp64"};
  cfg.features = {"user_avg_helpful_votes", "images_per_review", "timestamp"};
  return cfg;
}

json load_json(const std::string& path) { return json::parse(read_file(path)); }

}  // namespace

TEST_CASE("synth writes a deterministic corpus") {
  TempDir dir_a("synth_a"), dir_b("synth_b");
  RunConfig a = small_config(dir_a.str());
  RunConfig b = small_config(dir_b.str());
  run_synth(a);
  run_synth(b);
  CHECK(read_file(dir_a.file("synthetic.jsonl")) == read_file(dir_b.file("synthetic.jsonl")));
  CHECK(std::filesystem::exists(dir_a.file("run_config.json")));
}

TEST_CASE("eda emits the summary tables and reruns byte-identically") {
  TempDir dir("eda");
  RunConfig cfg = small_config(dir.str());
  cfg.data = test_util::fixture_path("reviews20.jsonl");
  run_eda(cfg);

  const std::string star = read_file(dir.file("star_summary.csv"));
  CHECK(star == "star,count,mean_helpful_votes\n1,3,1\n2,5,1.2\n3,3,1\n4,4,1\n5,5,1.4\n");

  const json stats = load_json(dir.file("ingest_stats.json"));
  CHECK(stats.at("read") == 20);
  CHECK(stats.at("retained") == 20);

  CHECK(std::filesystem::exists(dir.file("hist_text_length_rating.csv")));
  CHECK(std::filesystem::exists(dir.file("hist_image_count_helpful_vote.csv")));
  CHECK(std::filesystem::exists(dir.file("hist_helpful_vote_count.csv")));
  CHECK(std::filesystem::exists(dir.file("hist_rating_count.csv")));

  const std::string first_pass = read_file(dir.file("hist_image_count_helpful_vote.csv"));
  run_eda(cfg);
  CHECK(read_file(dir.file("hist_image_count_helpful_vote.csv")) == first_pass);
}

TEST_CASE("eda honors an explicit histogram list") {
  TempDir dir("eda_custom");
  RunConfig cfg = small_config(dir.str());
  cfg.data = test_util::fixture_path("reviews20.jsonl");
  cfg.histograms = {{"helpful_vote", "count", 2.0}};
  run_eda(cfg);
  CHECK(std::filesystem::exists(dir.file("hist_helpful_vote_count.csv")));
  CHECK(!std::filesystem::exists(dir.file("hist_text_length_rating.csv")));

  // and round-trips through the config file
  const RunConfig back =
      run_config_from_json(json::parse(read_file(dir.file("run_config.json"))));
  REQUIRE(back.histograms.size() == 1);
  CHECK(back.histograms[0].x == "helpful_vote");
  CHECK(back.histograms[0].width == 2.0);
}

TEST_CASE("eda propagates an empty post-filter dataset as an error") {
  TempDir dir("eda_empty");
  RunConfig cfg = small_config(dir.str());
  cfg.data = test_util::fixture_path("reviews20.jsonl");
  cfg.filter.max_text_length = 1;  // filters out every review
  CHECK_THROWS_AS(run_eda(cfg), EmptyDataset);
}

TEST_CASE("correlate retains the planted features and respects threshold 0") {
  TempDir dir("correlate");
  RunConfig cfg = small_config(dir.str());
  cfg.synth_n = 4000;
  run_synth(cfg);
  cfg.data = dir.file("synthetic.jsonl");
  run_correlate(cfg);

  const json retained = load_json(dir.file("retained_features.json"));
  const auto names = retained.at("retained").get<std::vector<std::string>>();
  CHECK(std::find(names.begin(), names.end(), "user_avg_helpful_votes") != names.end());
  CHECK(std::find(names.begin(), names.end(), "images_per_review") != names.end());
  CHECK(retained.at("correlation_with_target").at("user_avg_helpful_votes").get<double>() > 0.3);

  // vacuous threshold keeps all eight features
  cfg.selection_threshold = 0.0;
  run_correlate(cfg);
  const json all = load_json(dir.file("retained_features.json"));
  CHECK(all.at("retained").get<std::vector<std::string>>().size() == 8);

  const std::string grid = read_file(dir.file("correlation_matrix.csv"));
  CHECK(grid.find("helpful") != std::string::npos);
}

TEST_CASE("train consumes the retained feature list when none is configured") {
  TempDir dir("compose");
  RunConfig cfg = small_config(dir.str());
  cfg.synth_n = 1200;
  cfg.models = {"logistic"};
  run_synth(cfg);
  cfg.data = dir.file("synthetic.jsonl");
  run_correlate(cfg);

  cfg.features.clear();  // train must fall back to retained_features.json
  run_train(cfg);

  const json retained = load_json(dir.file("retained_features.json"));
  const Checkpoint ckpt = load_checkpoint(dir.file("checkpoint_logistic.json"));
  CHECK(ckpt.feature_names == retained.at("retained").get<std::vector<std::string>>());
}

TEST_CASE("train without any feature source is a config error") {
  TempDir dir("no_features");
  RunConfig cfg = small_config(dir.str());
  run_synth(cfg);
  cfg.data = dir.file("synthetic.jsonl");
  cfg.features.clear();
  CHECK_THROWS_AS(run_train(cfg), ConfigError);
}

TEST_CASE("train and evaluate write consistent reports, checkpoints and tables") {
  TempDir dir("train_eval");
  RunConfig cfg = small_config(dir.str());
  run_synth(cfg);
  cfg.data = dir.file("synthetic.jsonl");
  run_train(cfg);

  for (const std::string& kind : cfg.models) {
    CHECK(std::filesystem::exists(dir.file("checkpoint_" + kind + ".json")));
    const json report = load_json(dir.file("train_report_" + kind + ".json"));
    const auto val_loss = report.at("val_loss").get<std::vector<double>>();
    const int best = report.at("best_epoch").get<int>();
    REQUIRE(best >= 1);
    REQUIRE(best <= static_cast<int>(val_loss.size()));
    double min_val = val_loss[0];
    for (double v : val_loss) min_val = std::min(min_val, v);
    CHECK(val_loss[best - 1] == min_val);
    const std::string reason = report.at("stop_reason").get<std::string>();
    CHECK((reason == "early_stop" || reason == "max_epochs"));
    CHECK(report.at("train_config").at("seed").get<std::uint64_t>() ==
          derive_seed(cfg.seed, "train"));
  }

  run_evaluate(cfg);
  const std::string table = read_file(dir.file("model_comparison.csv"));
  CHECK(table.find("model,accuracy,mse\nlinear,") == 0);
  CHECK(table.find("\nlogistic,") != std::string::npos);
  CHECK(table.find("\nmlp64,") != std::string::npos);

  // evaluate recomputes exactly the metrics the reports recorded
  for (const std::string& kind : cfg.models) {
    const json report = load_json(dir.file("train_report_" + kind + ".json"));
    const double acc = report.at("test_metrics").at("accuracy").get<double>();
    const std::string needle = kind + "," + fmt_double(acc);
    CHECK(table.find(needle) != std::string::npos);
  }
}

TEST_CASE("single-baseline comparison carries both accuracy and mse") {
  TempDir dir("single_linear");
  RunConfig cfg = small_config(dir.str());
  cfg.models = {"linear"};
  cfg.synth_n = 600;
  run_synth(cfg);
  cfg.data = dir.file("synthetic.jsonl");
  run_train(cfg);
  run_evaluate(cfg);
  const std::string table = read_file(dir.file("model_comparison.csv"));
  // exactly one data row, with a non-empty mse column
  const std::size_t first_newline = table.find('\n');
  const std::string row = table.substr(first_newline + 1);
  CHECK(std::count(row.begin(), row.end(), '\n') == 1);
  CHECK(row.back() == '\n');
  CHECK(row[row.size() - 2] != ',');
}

TEST_CASE("the whole pipeline is byte-deterministic across reruns") {
  TempDir dir_a("det_a"), dir_b("det_b");
  for (const auto* dir : {&dir_a, &dir_b}) {
    RunConfig cfg = small_config(dir->str());
    cfg.synth_n = 900;
    run_synth(cfg);
    cfg.data = dir->file("synthetic.jsonl");
    run_correlate(cfg);
    run_train(cfg);
    run_evaluate(cfg);
  }
  for (const std::string name :
       {"synthetic.jsonl", "correlation_matrix.csv", "retained_features.json",
        "checkpoint_mlp64.json", "train_report_mlp64.json", "train_report_linear.json",
        "model_comparison.csv"}) {
    CAPTURE(name);
    CHECK(read_file(dir_a.file(name)) == read_file(dir_b.file(name)));
  }
}

TEST_CASE("report bundles every table and the feature matrix") {
  TempDir dir("report");
  RunConfig cfg = small_config(dir.str());
  cfg.synth_n = 700;
  cfg.models = {"linear", "logistic"};
  run_synth(cfg);
  cfg.data = dir.file("synthetic.jsonl");
  run_report(cfg);

  CHECK(std::filesystem::exists(dir.file("features.csv")));
  const std::string features = read_file(dir.file("features.csv"));
  CHECK(features.rfind("user_avg_helpful_votes,images_per_review,timestamp,label\n", 0) == 0);
  CHECK(std::count(features.begin(), features.end(), '\n') == 701);

  const json bundle = load_json(dir.file("report.json"));
  for (const char* key : {"star_summary", "correlation_matrix", "model_comparison",
                          "retained_features", "ingest_stats", "train_report_linear",
                          "hist_helpful_vote_count", "run_config"}) {
    CAPTURE(key);
    CHECK(bundle.contains(key));
  }
  CHECK(!bundle.contains("features"));
  CHECK(bundle.at("run_config").at("seed") == cfg.seed);
}

TEST_CASE("run config json honors overrides and defaults") {
  TempDir dir("config");
  RunConfig cfg;
  cfg.seed = 7;
  cfg.models = {"mlp128"};
  cfg.selection_threshold = 0.25;
  cfg.filter.max_text_length = 6800;
  write_text_file(dir.file("config.json"), run_config_json(cfg).dump());

  const RunConfig back = load_run_config(dir.file("config.json"));
  CHECK(back.seed == 7);
  CHECK(back.models == std::vector<std::string>{"mlp128"});
  CHECK(back.selection_threshold == 0.25);
  CHECK(back.filter.max_text_length == 6800);
  CHECK(back.batch_size == 256);  // untouched default

  // partial config files inherit defaults
  write_text_file(dir.file("partial.json"), R"({"seed": 9})");
  const RunConfig partial = load_run_config(dir.file("partial.json"));
  CHECK(partial.seed == 9);
  CHECK(partial.models.size() == 5);
}
