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
#include <string_view>
#include <unordered_map>
#include <utility>

#include "helpful/types.hpp"

namespace helpful {

// Transparent lexicon-average sentiment scorer. Keys are lower-case words;
// each carries a polarity in [-1, 1] and a subjectivity in [0, 1].
struct SentimentLexicon {
  struct Scores {
    double polarity = 0.0;
    double subjectivity = 0.0;
  };
  std::unordered_map<std::string, Scores> entries;
};

// Compiled-in default lexicon; mirrored by data/sentiment_lexicon.tsv.
const SentimentLexicon& builtin_lexicon();

// TSV loader: word <tab> polarity <tab> subjectivity, '#' comment lines and
// blank lines allowed. Words are lower-cased on load. Throws IoError on an
// unreadable file or an out-of-range score.
SentimentLexicon load_lexicon_tsv(const std::string& path);

// Tokenizes on non-alphabetic boundaries, lower-cases, and averages the
// scores of tokens present in the lexicon. (0, 0) when nothing matches.
SentimentLexicon::Scores sentiment_scores(std::string_view text, const SentimentLexicon& lexicon);

}  // namespace helpful
