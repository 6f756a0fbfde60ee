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
#include "hashseg/synth_gen.h"

#include <algorithm>

#include "hashseg/error.h"
#include "hashseg/rng.h"
#include "hashseg/unicode.h"

namespace hashseg {

namespace {

bool IsWordSlot(SlotKind kind) {
  return kind == SlotKind::kLowerWord || kind == SlotKind::kCapitalizedWord ||
         kind == SlotKind::kUpperWord;
}

std::u32string AdjustCase(std::u32string_view word, SlotKind kind) {
  switch (kind) {
    case SlotKind::kLowerWord:
      return ToLower(word);
    case SlotKind::kUpperWord:
      return ToUpper(word);
    case SlotKind::kCapitalizedWord: {
      std::u32string out = ToLower(word);
      if (!out.empty()) out[0] = ToUpper(out[0]);
      return out;
    }
    default:
      return std::u32string(word);
  }
}

// Draws an index with probability proportional to the weights' increments.
size_t DrawCumulative(std::span<const std::uint64_t> cumulative, Rng &rng) {
  std::uint64_t r = rng.Below(cumulative.back());
  return std::upper_bound(cumulative.begin(), cumulative.end(), r) -
         cumulative.begin();
}

struct NGramPool {
  std::vector<std::vector<std::u32string>> words;
  std::vector<std::uint64_t> cumulative;

  void Add(std::vector<std::u32string> w, std::uint64_t freq) {
    cumulative.push_back((cumulative.empty() ? 0 : cumulative.back()) + freq);
    words.push_back(std::move(w));
  }
  bool empty() const { return words.empty(); }
  const std::vector<std::u32string> &Draw(Rng &rng) const {
    return words[DrawCumulative(cumulative, rng)];
  }
};

bool IsPlainWord(std::u32string_view word) {
  return !word.empty() && std::all_of(word.begin(), word.end(), IsLetter);
}

}  // namespace

int HashtagTemplate::WordSlots() const {
  return static_cast<int>(std::count_if(slots.begin(), slots.end(), IsWordSlot));
}

std::string HashtagTemplate::Pattern() const {
  std::string out;
  for (size_t i = 0; i < slots.size(); ++i) {
    if (i > 0 && joiners[i - 1] == Joiner::kUnderscore) out += '_';
    switch (slots[i]) {
      case SlotKind::kLowerWord: out += "word"; break;
      case SlotKind::kCapitalizedWord: out += "Word"; break;
      case SlotKind::kUpperWord: out += "WORD"; break;
      case SlotKind::kDigitRun: out += "digits"; break;
      case SlotKind::kYear: out += "2017"; break;
    }
  }
  return out;
}

void ValidateTemplate(const HashtagTemplate &tmpl) {
  if (tmpl.slots.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "template has no slots");
  }
  if (tmpl.joiners.size() + 1 != tmpl.slots.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "template joiner count must be slot count - 1");
  }
}

const std::vector<HashtagTemplate> &BuiltinCatalog() {
  using S = SlotKind;
  constexpr Joiner N = Joiner::kNone;
  constexpr Joiner U = Joiner::kUnderscore;
  static const std::vector<HashtagTemplate> catalog = {
      {1, {S::kLowerWord, S::kYear}, {U}},
      {2, {S::kUpperWord, S::kYear}, {U}},
      {3, {S::kLowerWord, S::kLowerWord, S::kYear}, {N, U}},
      {4, {S::kLowerWord, S::kLowerWord}, {U}},
      {5, {S::kCapitalizedWord, S::kCapitalizedWord}, {U}},
      {6, {S::kLowerWord, S::kLowerWord}, {N}},
      {7, {S::kLowerWord, S::kLowerWord, S::kLowerWord}, {N, N}},
      {8, {S::kLowerWord, S::kDigitRun, S::kLowerWord}, {N, N}},
      {9, {S::kLowerWord, S::kLowerWord, S::kLowerWord}, {U, U}},
      {10,
       {S::kLowerWord, S::kLowerWord, S::kLowerWord, S::kDigitRun},
       {N, U, N}},
      {11, {S::kCapitalizedWord, S::kLowerWord, S::kDigitRun}, {N, N}},
  };
  return catalog;
}

LabeledHashtag LabelsFromSegmentation(std::span<const std::u32string> words,
                                      std::span<const Joiner> joiners) {
  if (words.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "segmentation has no words");
  }
  if (joiners.size() + 1 != words.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "joiner count must be word count - 1");
  }
  LabeledHashtag out;
  for (size_t w = 0; w < words.size(); ++w) {
    const std::u32string &word = words[w];
    if (word.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "empty word in segmentation");
    }
    for (char32_t ch : word) {
      if (IsSpace(ch) || ch == U'_') {
        throw Error(ErrorKind::kInvalidArgument,
                    "word contains whitespace or underscore: " +
                        EncodeUtf8(word));
      }
    }
    if (w > 0 && joiners[w - 1] == Joiner::kUnderscore) {
      out.chars.push_back(U'_');
      out.labels.push_back(1);
    }
    out.chars += word;
    out.labels.insert(out.labels.end(), word.size() - 1, 0);
    out.labels.push_back(1);
  }
  out.gold.assign(words.begin(), words.end());
  return out;
}

LabeledHashtag LabelsFromSegmentation(std::span<const std::u32string> words) {
  std::vector<Joiner> joiners(words.empty() ? 0 : words.size() - 1,
                              Joiner::kNone);
  return LabelsFromSegmentation(words, joiners);
}

std::vector<std::u32string> ApplyLabels(std::u32string_view chars,
                                        std::span<const std::uint8_t> labels) {
  if (chars.size() != labels.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "label sequence length differs from hashtag length");
  }
  std::vector<std::u32string> words;
  auto emit = [&words](std::u32string_view piece) {
    size_t begin = piece.find_first_not_of(U'_');
    if (begin == std::u32string_view::npos) return;
    size_t end = piece.find_last_not_of(U'_');
    words.emplace_back(piece.substr(begin, end - begin + 1));
  };
  size_t start = 0;
  for (size_t i = 0; i < chars.size(); ++i) {
    if (labels[i] != 0 || i + 1 == chars.size()) {
      emit(chars.substr(start, i + 1 - start));
      start = i + 1;
    }
  }
  return words;
}

Labels AlignSegmentation(std::u32string_view chars,
                         std::span<const std::u32string> words) {
  Labels labels(chars.size(), 0);
  size_t pos = 0;
  auto skip_underscores = [&] {
    while (pos < chars.size() && chars[pos] == U'_') labels[pos++] = 1;
  };
  for (const std::u32string &word : words) {
    skip_underscores();
    if (word.empty() || pos + word.size() > chars.size()) {
      throw Error(ErrorKind::kMalformedInput,
                  "segmentation does not match hashtag " + EncodeUtf8(chars));
    }
    for (size_t k = 0; k < word.size(); ++k) {
      if (ToLower(chars[pos + k]) != ToLower(word[k])) {
        throw Error(ErrorKind::kMalformedInput,
                    "segmentation does not match hashtag " + EncodeUtf8(chars));
      }
    }
    pos += word.size();
    labels[pos - 1] = 1;
  }
  skip_underscores();
  if (pos != chars.size() || words.empty()) {
    throw Error(ErrorKind::kMalformedInput,
                "segmentation does not cover hashtag " + EncodeUtf8(chars));
  }
  return labels;
}

std::vector<LabeledHashtag> GenerateDataset(
    std::span<const NGramCount> ngrams,
    std::span<const HashtagTemplate> catalog, size_t count, std::uint64_t seed,
    const GeneratorOptions &options) {
  std::vector<LabeledHashtag> out;
  if (count == 0) return out;
  if (catalog.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "template catalog is empty");
  }
  for (const HashtagTemplate &tmpl : catalog) ValidateTemplate(tmpl);

  // Group n-grams by their number of usable words. Digit runs inside an
  // n-gram are dropped; n-grams holding words with inner punctuation are
  // skipped entirely.
  std::map<size_t, NGramPool> by_length;
  NGramPool any_words;
  for (const NGramCount &ng : ngrams) {
    if (ng.frequency == 0) continue;
    std::vector<std::u32string> words;
    bool usable = true;
    for (const Token &tok : Tokenize(ng.ngram)) {
      if (tok.kind == TokenKind::kDigitRun) continue;
      std::u32string w = DecodeUtf8(tok.surface);
      if (!IsWordKind(tok.kind) || !IsPlainWord(w)) {
        usable = false;
        break;
      }
      words.push_back(std::move(w));
    }
    if (!usable || words.empty()) continue;
    by_length[words.size()].Add(words, ng.frequency);
    any_words.Add(std::move(words), ng.frequency);
  }
  if (any_words.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "no n-gram provides words for generation");
  }

  std::vector<double> template_cumulative;
  double total_weight = 0.0;
  for (const HashtagTemplate &tmpl : catalog) {
    double w = 1.0;
    if (!options.type_weights.empty()) {
      auto it = options.type_weights.find(tmpl.type_id);
      w = it == options.type_weights.end() ? 0.0 : it->second;
    }
    if (w < 0.0) {
      throw Error(ErrorKind::kInvalidArgument, "negative template weight");
    }
    total_weight += w;
    template_cumulative.push_back(total_weight);
  }
  if (total_weight <= 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "all template weights are zero");
  }

  Rng rng(seed);
  out.reserve(count);
  for (size_t item = 0; item < count; ++item) {
    double r = rng.Uniform() * total_weight;
    size_t t = std::upper_bound(template_cumulative.begin(),
                                template_cumulative.end(), r) -
               template_cumulative.begin();
    t = std::min(t, catalog.size() - 1);
    const HashtagTemplate &tmpl = catalog[t];
    const size_t need = static_cast<size_t>(tmpl.WordSlots());

    std::vector<std::u32string> source;
    auto exact = by_length.find(need);
    if (need == 0) {
      // Digit-only template; nothing to draw.
    } else if (exact != by_length.end()) {
      source = exact->second.Draw(rng);
    } else {
      while (source.size() < need) {
        const auto &more = any_words.Draw(rng);
        source.insert(source.end(), more.begin(), more.end());
      }
      source.resize(need);
    }

    std::vector<std::u32string> words;
    size_t next_word = 0;
    for (SlotKind slot : tmpl.slots) {
      if (IsWordSlot(slot)) {
        words.push_back(AdjustCase(source[next_word++], slot));
      } else if (slot == SlotKind::kYear) {
        words.push_back(DecodeUtf8(std::to_string(1990 + rng.Below(40))));
      } else {
        std::u32string digits;
        size_t len = 1 + rng.Below(4);
        for (size_t k = 0; k < len; ++k) {
          digits.push_back(U'0' + static_cast<char32_t>(rng.Below(10)));
        }
        words.push_back(std::move(digits));
      }
    }
    LabeledHashtag tag = LabelsFromSegmentation(words, tmpl.joiners);
    tag.type_id = tmpl.type_id;
    out.push_back(std::move(tag));
  }
  return out;
}

}  // namespace hashseg
