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
#include <utility>
#include <vector>

#include "helpful/types.hpp"

namespace helpful {

// Parses one JSON Lines record. Throws MalformedRecord when the line is not
// a JSON object, a required field (rating, text, user_id, asin, timestamp)
// is missing or ill-typed, the rating falls outside [1, 5], or helpful_vote,
// timestamp or the image list is negative/ill-formed. Optional fields default:
// title "", parent_asin = asin, helpful_vote 0, images [], verified_purchase
// false.
RawReview parse_review_record(std::string_view line);

// JSON line in the same wire format parse_review_record accepts, so
// parse -> serialize -> parse is a fixed point on all retained fields.
std::string serialize_review(const RawReview& review);

// Per-line parse of a whole file's lines. Output order matches input order;
// the OpenMP kernel and the serial reference produce identical results.
struct ParsedLines {
  std::vector<RawReview> reviews;  // retained, in input order
  IngestStats stats;
};
ParsedLines parse_records(const std::vector<std::string>& lines, const IngestFilter& filter);
ParsedLines parse_records_serial(const std::vector<std::string>& lines, const IngestFilter& filter);

// Loads a JSON Lines corpus. Malformed lines are counted and skipped, never
// fatal. Throws IoError when the path is unreadable and EmptyDataset when no
// record survives parsing and filtering.
std::pair<Dataset, IngestStats> load_dataset(const std::string& path, const IngestFilter& filter);

void write_jsonl(const Dataset& dataset, const std::string& path);

}  // namespace helpful
