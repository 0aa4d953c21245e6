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

#include "helpful/correlation.hpp"
#include "helpful/features.hpp"
#include "helpful/metrics.hpp"
#include "helpful/train.hpp"
#include "helpful/types.hpp"

namespace helpful {

// Shortest decimal string that parses back to the identical double, so CSV
// output is reproducible byte for byte.
std::string fmt_double(double value);

void write_text_file(const std::string& path, const std::string& content);

// CSV exports, one file per table. Undefined cells are left empty except in
// the correlation grid, which spells "NA".
std::string feature_matrix_csv(const FeatureMatrix& matrix);
std::string correlation_csv(const CorrelationMatrix& corr);
std::string star_summary_csv(const std::vector<StarRow>& rows);
std::string histogram_csv(const Histogram& hist);
std::string model_comparison_csv(const std::vector<ComparisonRow>& rows);

nlohmann::json ingest_stats_json(const IngestStats& stats);
nlohmann::json train_report_json(const TrainReport& report);

nlohmann::json model_config_json(const ModelConfig& config);
ModelConfig model_config_from_json(const nlohmann::json& j);
nlohmann::json train_config_json(const TrainConfig& config);
TrainConfig train_config_from_json(const nlohmann::json& j);

// Checkpoint: model kind and shape, every parameter, the standardization
// statistics and the feature-name list — enough to reload and predict
// bit-identically on freshly built features.
struct Checkpoint {
  Model model;
  StandardizationStats stats;
  std::vector<std::string> feature_names;
};

nlohmann::json checkpoint_json(const Checkpoint& ckpt);
Checkpoint checkpoint_from_json(const nlohmann::json& j);
void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace helpful
