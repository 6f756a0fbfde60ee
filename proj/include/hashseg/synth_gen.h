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
#ifndef HASHSEG_SYNTH_GEN_H_
#define HASHSEG_SYNTH_GEN_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hashseg/text_corpus.h"

namespace hashseg {

// Per-character boundary labels: 1 marks the last character of a word (and
// every underscore), 0 everything else.
using Labels = std::vector<std::uint8_t>;

enum class SlotKind {
  kLowerWord,
  kCapitalizedWord,
  kUpperWord,
  kDigitRun,  // 1-4 uniformly random digits
  kYear,      // 1990-2029
};

enum class Joiner { kNone, kUnderscore };

struct HashtagTemplate {
  int type_id = 0;
  std::vector<SlotKind> slots;
  std::vector<Joiner> joiners;  // slots.size() - 1 entries

  int WordSlots() const;
  // Human-readable shape such as "wordword_2017".
  std::string Pattern() const;
};

// Throws Error(kInvalidArgument) on a malformed template.
void ValidateTemplate(const HashtagTemplate &tmpl);

// The eleven built-in hashtag shapes, type ids 1..11. Types 3, 6 and 7 are
// wordword_2017, wordword and wordwordword.
const std::vector<HashtagTemplate> &BuiltinCatalog();

struct LabeledHashtag {
  std::u32string chars;
  Labels labels;
  int type_id = -1;  // -1 when unknown
  std::vector<std::u32string> gold;

  bool operator==(const LabeledHashtag &) const = default;
};

// Joins words with the given joiners and labels the result. Throws
// Error(kInvalidArgument) for an empty word list, an empty word, a word with
// whitespace or underscores, or a joiner count other than words - 1.
LabeledHashtag LabelsFromSegmentation(std::span<const std::u32string> words,
                                      std::span<const Joiner> joiners);
// All joiners kNone.
LabeledHashtag LabelsFromSegmentation(std::span<const std::u32string> words);

// Splits after every 1 label; the final label always counts as 1. Underscores
// are stripped from token edges and tokens that become empty are dropped.
// Throws Error(kInvalidArgument) on a length mismatch.
std::vector<std::u32string> ApplyLabels(std::u32string_view chars,
                                        std::span<const std::uint8_t> labels);

// Recovers canonical labels for a hashtag and its word sequence. Words are
// matched case-insensitively and underscores between them are skipped.
// Throws Error(kMalformedInput) when the words do not spell the hashtag.
Labels AlignSegmentation(std::u32string_view chars,
                         std::span<const std::u32string> words);

struct GeneratorOptions {
  // Relative template weights keyed by type id; empty means uniform.
  std::map<int, double> type_weights;
};

// Draws count hashtags. For each item a template is chosen, then an n-gram
// with exactly as many words as the template has word slots is drawn with
// probability proportional to its frequency (words of several n-grams are
// concatenated when no such n-gram exists). Digit slots are random.
// Deterministic given the seed. Throws Error(kInvalidArgument) if count > 0
// and no n-gram provides usable words.
std::vector<LabeledHashtag> GenerateDataset(
    std::span<const NGramCount> ngrams,
    std::span<const HashtagTemplate> catalog, size_t count, std::uint64_t seed,
    const GeneratorOptions &options = {});

}  // namespace hashseg

#endif  // HASHSEG_SYNTH_GEN_H_
