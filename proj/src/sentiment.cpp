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

#include "helpful/sentiment.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace helpful {

namespace {

struct LexiconRow {
  const char* word;
  double polarity;
  double subjectivity;
};

// Hand-curated general-purpose sentiment words.
constexpr LexiconRow kBuiltinRows[] = {
    {"amazing", 0.65, 0.9},      {"awesome", 1.0, 1.0},
    {"awful", -1.0, 1.0},        {"bad", -0.7, 0.67},
    {"beautiful", 0.85, 1.0},    {"best", 1.0, 0.3},
    {"better", 0.5, 0.5},        {"bland", -0.35, 0.4},
    {"breaks", -0.4, 0.5},       {"bright", 0.55, 0.65},
    {"broke", -0.5, 0.5},        {"broken", -0.4, 0.4},
    {"cheap", -0.4, 0.7},        {"clean", 0.35, 0.45},
    {"comfortable", 0.55, 0.65}, {"convenient", 0.45, 0.55},
    {"cute", 0.5, 0.75},         {"damaged", -0.5, 0.5},
    {"decent", 0.3, 0.6},        {"defective", -0.6, 0.6},
    {"delicious", 0.8, 0.9},     {"dirty", -0.5, 0.6},
    {"disappointed", -0.75, 0.75}, {"disappointing", -0.6, 0.7},
    {"dry", -0.2, 0.4},          {"durable", 0.5, 0.55},
    {"easy", 0.43, 0.58},        {"effective", 0.55, 0.6},
    {"excellent", 1.0, 1.0},     {"expensive", -0.25, 0.6},
    {"fail", -0.5, 0.5},         {"failed", -0.55, 0.55},
    {"fake", -0.6, 0.75},        {"fantastic", 0.9, 0.9},
    {"fast", 0.4, 0.55},         {"favorite", 0.75, 0.8},
    {"fine", 0.42, 0.52},        {"flimsy", -0.5, 0.65},
    {"fresh", 0.4, 0.55},        {"garbage", -0.8, 0.85},
    {"gentle", 0.45, 0.6},       {"glad", 0.5, 0.8},
    {"good", 0.7, 0.6},          {"gorgeous", 0.85, 0.95},
    {"great", 0.8, 0.75},        {"greasy", -0.4, 0.55},
    {"happy", 0.8, 1.0},         {"hate", -0.8, 0.9},
    {"hated", -0.9, 0.9},        {"horrible", -1.0, 1.0},
    {"impressed", 0.65, 0.75},   {"impressive", 0.7, 0.75},
    {"irritating", -0.6, 0.7},   {"junk", -0.7, 0.8},
    {"leaked", -0.45, 0.5},      {"lightweight", 0.25, 0.4},
    {"love", 0.5, 0.6},          {"loved", 0.7, 0.8},
    {"lovely", 0.75, 0.9},       {"mediocre", -0.3, 0.6},
    {"mess", -0.4, 0.6},         {"misleading", -0.6, 0.75},
    {"nasty", -0.75, 0.9},       {"nice", 0.6, 1.0},
    {"okay", 0.2, 0.5},          {"perfect", 1.0, 1.0},
    {"pleasant", 0.6, 0.75},     {"poor", -0.4, 0.6},
    {"pretty", 0.25, 0.7},       {"quality", 0.3, 0.4},
    {"recommend", 0.45, 0.5},    {"recommended", 0.5, 0.5},
    {"refund", -0.35, 0.45},     {"regret", -0.6, 0.7},
    {"reliable", 0.55, 0.55},    {"returned", -0.3, 0.4},
    {"rough", -0.35, 0.5},       {"sad", -0.5, 1.0},
    {"satisfied", 0.55, 0.65},   {"sleek", 0.5, 0.65},
    {"slow", -0.3, 0.4},         {"smells", -0.1, 0.3},
    {"smooth", 0.5, 0.55},       {"soft", 0.35, 0.5},
    {"solid", 0.45, 0.5},        {"sticky", -0.35, 0.55},
    {"strong", 0.45, 0.5},       {"sturdy", 0.5, 0.55},
    {"super", 0.55, 0.75},       {"terrible", -1.0, 1.0},
    {"trash", -0.75, 0.85},      {"ugly", -0.7, 0.9},
    {"unusable", -0.7, 0.7},     {"useful", 0.45, 0.45},
    {"useless", -0.5, 0.6},      {"waste", -0.55, 0.65},
    {"weak", -0.4, 0.5},         {"wonderful", 1.0, 1.0},
    {"worst", -1.0, 1.0},        {"worthless", -0.7, 0.75},
    {"wow", 0.6, 0.9},           {"wrong", -0.5, 0.5},
};

}  // namespace

const SentimentLexicon& builtin_lexicon() {
  static const SentimentLexicon lex = [] {
    SentimentLexicon l;
    for (const LexiconRow& row : kBuiltinRows) {
      l.entries[row.word] = {row.polarity, row.subjectivity};
    }
    return l;
  }();
  return lex;
}

SentimentLexicon load_lexicon_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon " + path);

  SentimentLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    std::istringstream row(line);
    std::string word, pol_s, subj_s;
    if (!std::getline(row, word, '\t') || !std::getline(row, pol_s, '\t') ||
        !std::getline(row, subj_s)) {
      throw IoError(path + ":" + std::to_string(line_no) + ": expected 3 tab-separated columns");
    }
    double pol = 0.0, subj = 0.0;
    try {
      pol = std::stod(pol_s);
      subj = std::stod(subj_s);
    } catch (const std::exception&) {
      throw IoError(path + ":" + std::to_string(line_no) + ": non-numeric score");
    }
    if (word.empty() || pol < -1.0 || pol > 1.0 || subj < 0.0 || subj > 1.0) {
      throw IoError(path + ":" + std::to_string(line_no) + ": score out of range or empty word");
    }
    for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    lex.entries[word] = {pol, subj};
  }
  return lex;
}

SentimentLexicon::Scores sentiment_scores(std::string_view text, const SentimentLexicon& lexicon) {
  double pol_sum = 0.0, subj_sum = 0.0;
  std::size_t matched = 0;

  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    auto it = lexicon.entries.find(token);
    if (it != lexicon.entries.end()) {
      pol_sum += it->second.polarity;
      subj_sum += it->second.subjectivity;
      ++matched;
    }
    token.clear();
  };

  for (char c : text) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      token += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      flush();
    }
  }
  flush();

  if (matched == 0) return {0.0, 0.0};
  return {pol_sum / static_cast<double>(matched), subj_sum / static_cast<double>(matched)};
}

}  // namespace helpful
