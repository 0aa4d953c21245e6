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

#include "helpful/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "helpful/parallel.hpp"

namespace helpful {

using nlohmann::json;

std::size_t utf8_length(std::string_view text) {
  std::size_t n = 0;
  for (unsigned char c : text) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

namespace {

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

double require_number(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    throw MalformedRecord(std::string("missing or non-numeric field: ") + key);
  }
  return it->get<double>();
}

std::string require_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw MalformedRecord(std::string("missing or non-string field: ") + key);
  }
  return it->get<std::string>();
}

// Tracks whether any optional field had to be defaulted, for
// IngestFilter::require_fields.
struct ParseOutcome {
  RawReview review;
  bool defaulted = false;
};

ParseOutcome parse_record_impl(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw MalformedRecord(std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw MalformedRecord("line is not a JSON object");

  ParseOutcome out;
  RawReview& r = out.review;

  r.rating = require_number(obj, "rating");
  if (!(r.rating >= 1.0 && r.rating <= 5.0)) {
    throw MalformedRecord("rating outside [1, 5]");
  }
  r.text = require_string(obj, "text");
  r.user_id = require_string(obj, "user_id");
  r.asin = require_string(obj, "asin");
  if (r.user_id.empty() || r.asin.empty()) {
    throw MalformedRecord("empty user_id or asin");
  }
  {
    auto it = obj.find("timestamp");
    if (it == obj.end() || !it->is_number_integer()) {
      throw MalformedRecord("missing or non-integer timestamp");
    }
    r.timestamp = it->get<std::int64_t>();
    if (r.timestamp < 0) throw MalformedRecord("negative timestamp");
  }

  if (auto it = obj.find("title"); it != obj.end() && it->is_string()) {
    r.title = it->get<std::string>();
  } else {
    out.defaulted = true;
  }
  if (auto it = obj.find("parent_asin"); it != obj.end() && it->is_string()) {
    r.parent_asin = it->get<std::string>();
  } else {
    r.parent_asin = r.asin;
    out.defaulted = true;
  }
  if (auto it = obj.find("helpful_vote"); it != obj.end()) {
    if (!it->is_number_integer()) throw MalformedRecord("non-integer helpful_vote");
    r.helpful_vote = it->get<std::int64_t>();
    if (r.helpful_vote < 0) throw MalformedRecord("negative helpful_vote");
  } else {
    out.defaulted = true;
  }
  if (auto it = obj.find("images"); it != obj.end()) {
    if (!it->is_array()) throw MalformedRecord("images is not a list");
    r.image_count = static_cast<int>(it->size());
  } else {
    out.defaulted = true;
  }
  if (auto it = obj.find("verified_purchase"); it != obj.end() && it->is_boolean()) {
    r.verified_purchase = it->get<bool>();
  } else {
    out.defaulted = true;
  }
  return out;
}

enum class LineState : std::uint8_t { kRetained, kMalformed, kFiltered };

LineState classify_line(const std::string& line, const IngestFilter& filter, RawReview* out) {
  ParseOutcome parsed;
  try {
    parsed = parse_record_impl(line);
  } catch (const MalformedRecord&) {
    return LineState::kMalformed;
  }
  if (filter.require_fields && parsed.defaulted) return LineState::kFiltered;
  if (filter.max_text_length > 0 &&
      utf8_length(parsed.review.text) > static_cast<std::size_t>(filter.max_text_length)) {
    return LineState::kFiltered;
  }
  *out = std::move(parsed.review);
  return LineState::kRetained;
}

ParsedLines assemble(const std::vector<std::string>& lines, std::vector<LineState>& states,
                     std::vector<RawReview>& slots) {
  ParsedLines out;
  out.stats.read = static_cast<std::int64_t>(lines.size());
  out.reviews.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    switch (states[i]) {
      case LineState::kRetained:
        out.reviews.push_back(std::move(slots[i]));
        ++out.stats.retained;
        break;
      case LineState::kMalformed:
        ++out.stats.dropped_malformed;
        break;
      case LineState::kFiltered:
        ++out.stats.dropped_filtered;
        break;
    }
  }
  return out;
}

}  // namespace

RawReview parse_review_record(std::string_view line) {
  return parse_record_impl(line).review;
}

std::string serialize_review(const RawReview& review) {
  json obj;
  obj["rating"] = review.rating;
  obj["title"] = review.title;
  obj["text"] = review.text;
  // The wire format carries an image list, not a count.
  obj["images"] = json::array();
  for (int i = 0; i < review.image_count; ++i) obj["images"].push_back(json::object());
  obj["asin"] = review.asin;
  obj["parent_asin"] = review.parent_asin;
  obj["user_id"] = review.user_id;
  obj["timestamp"] = review.timestamp;
  obj["helpful_vote"] = review.helpful_vote;
  obj["verified_purchase"] = review.verified_purchase;
  return obj.dump();
}

ParsedLines parse_records_serial(const std::vector<std::string>& lines,
                                 const IngestFilter& filter) {
  std::vector<LineState> states(lines.size());
  std::vector<RawReview> slots(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    states[i] = classify_line(lines[i], filter, &slots[i]);
  }
  return assemble(lines, states, slots);
}

ParsedLines parse_records(const std::vector<std::string>& lines, const IngestFilter& filter) {
  std::vector<LineState> states(lines.size());
  std::vector<RawReview> slots(lines.size());
  const std::int64_t n = static_cast<std::int64_t>(lines.size());
#pragma omp parallel for schedule(dynamic, 256) if (parallel::threads() > 1)
  for (std::int64_t i = 0; i < n; ++i) {
    states[i] = classify_line(lines[i], filter, &slots[i]);
  }
  return assemble(lines, states, slots);
}

std::pair<Dataset, IngestStats> load_dataset(const std::string& path, const IngestFilter& filter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    lines.push_back(line);
  }
  if (in.bad()) throw IoError("read failure on " + path);

  ParsedLines parsed = parse_records(lines, filter);
  if (parsed.reviews.empty()) {
    throw EmptyDataset("no records retained from " + path);
  }
  Dataset ds;
  ds.reviews = std::move(parsed.reviews);
  ds.source = path;
  return {std::move(ds), parsed.stats};
}

void write_jsonl(const Dataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  for (const RawReview& r : dataset.reviews) {
    out << serialize_review(r) << '\n';
  }
  if (!out) throw IoError("write failure on " + path);
}

}  // namespace helpful
