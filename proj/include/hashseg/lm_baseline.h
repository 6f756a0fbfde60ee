// Copyright 2026 The hashseg Authors.
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
#ifndef HASHSEG_LM_BASELINE_H_
#define HASHSEG_LM_BASELINE_H_

#include <string>
#include <string_view>
#include <vector>

#include "hashseg/text_corpus.h"

namespace hashseg {

// Smoothed unigram log-probability:
//   log((f(w) + alpha) / (N + alpha * |V|))
// where N is the token total. A table with N + alpha * |V| == 0 assigns
// probability 1 to everything.
double UnigramLogProb(const NGramTable &table, const std::string &word);

// log(f(prev, word) / f(prev)) when the pair was observed, otherwise the
// smoothed unigram log-probability of word.
double BigramLogProb(const NGramTable &table, const std::string &prev,
                     const std::string &word);

enum class ScoringMode {
  kBigramBackoff,  // first word unigram, then bigram with unigram fallback
  kUnigram,        // sum of unigram log-probabilities
};

struct SegmenterOptions {
  int max_word_len = 20;
  ScoringMode mode = ScoringMode::kBigramBackoff;
};

struct SegmentationHypothesis {
  std::vector<std::u32string> words;  // original-case substrings of the input
  double log_score = 0.0;
};

// Log-score of a word sequence (lowercased forms) summed left to right.
double ScoreWords(const NGramTable &table,
                  const std::vector<std::string> &lowered_words,
                  ScoringMode mode);

// Highest scoring segmentation with every word at most max_word_len
// characters. Underscores force boundaries and are dropped. Ties prefer fewer
// words, then the lexicographically smaller sequence of lowercased words.
// Throws Error(kInvalidArgument) when the input has no characters besides
// underscores or max_word_len < 1.
SegmentationHypothesis SegmentDp(const NGramTable &table,
                                 std::u32string_view input,
                                 const SegmenterOptions &options = {});

}  // namespace hashseg

#endif  // HASHSEG_LM_BASELINE_H_
