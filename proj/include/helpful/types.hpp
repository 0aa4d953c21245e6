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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace helpful {

struct MalformedRecord : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyDataset : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LengthMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroVariance : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ShapeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonFiniteLoss : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TooFewRows : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownWhitelistName : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One parsed review. The image list is reduced to a count at parse time; the
// models never read image payloads.
struct RawReview {
  double rating = 0.0;  // stars in [1, 5]
  std::string title;
  std::string text;
  int image_count = 0;
  std::string asin;
  std::string parent_asin;
  std::string user_id;
  std::int64_t timestamp = 0;  // ms since Unix epoch
  std::int64_t helpful_vote = 0;
  bool verified_purchase = false;

  bool operator==(const RawReview&) const = default;
};

struct Dataset {
  std::vector<RawReview> reviews;
  std::string source;  // file path or "synthetic(<seed>)"

  std::size_t size() const { return reviews.size(); }
  bool empty() const { return reviews.empty(); }
};

struct IngestFilter {
  // Maximum review text length in characters (Unicode scalar values);
  // 0 disables the filter.
  std::int64_t max_text_length = 0;
  // When true, records missing any optional field (helpful_vote, images,
  // verified_purchase, title, parent_asin) are dropped instead of defaulted.
  bool require_fields = false;
};

struct IngestStats {
  std::int64_t read = 0;
  std::int64_t retained = 0;
  std::int64_t dropped_malformed = 0;
  std::int64_t dropped_filtered = 0;

  bool operator==(const IngestStats&) const = default;
};

// Number of Unicode scalar values in a UTF-8 string (continuation bytes are
// not counted). Malformed sequences degrade to byte counting.
std::size_t utf8_length(std::string_view text);

}  // namespace helpful
