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
#ifndef HASHSEG_TEXT_CORPUS_H_
#define HASHSEG_TEXT_CORPUS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hashseg {

enum class TokenKind {
  kLowerWord,
  kCapitalizedWord,
  kUpperWord,  // two or more capitals, e.g. abbreviations like NASA
  kDigitRun,   // 1-4 ASCII digits
  kOther,
};

std::string_view TokenKindName(TokenKind kind);

struct Token {
  std::string surface;  // UTF-8, non-empty, no whitespace
  TokenKind kind = TokenKind::kOther;

  bool operator==(const Token &) const = default;
};

using TokenLine = std::vector<Token>;
using StopwordSet = std::unordered_set<std::string>;

inline bool IsWordKind(TokenKind kind) {
  return kind == TokenKind::kLowerWord || kind == TokenKind::kCapitalizedWord ||
         kind == TokenKind::kUpperWord;
}

// Classifies a stripped token surface. Internal apostrophes and hyphens are
// allowed inside words; digit strings longer than four are kOther.
TokenKind ClassifyToken(std::u32string_view surface);

// Splits on Unicode whitespace (newlines included) and strips leading and
// trailing punctuation from each piece. Pieces that are all punctuation are
// dropped.
std::vector<Token> Tokenize(std::string_view text);

// Same as Tokenize, one TokenLine per input line. Empty lines are kept as
// empty TokenLines so that line numbers stay aligned.
std::vector<TokenLine> TokenizeLines(std::string_view text);

struct NGramCount {
  std::string ngram;  // space-joined token surfaces
  std::uint64_t frequency = 0;

  bool operator==(const NGramCount &) const = default;
};

// Counts n-grams inside each line (never across lines). An n-gram qualifies
// when every token is a word or digit run and none is a stopword (compared
// lowercased). Result is sorted by frequency descending, then by n-gram
// bytes ascending.
std::vector<NGramCount> ExtractNGrams(std::span<const TokenLine> lines,
                                      int min_n, int max_n,
                                      const StopwordSet &stopwords,
                                      std::uint64_t min_freq);
std::vector<NGramCount> ExtractNGrams(std::span<const Token> tokens,
                                      int min_n, int max_n,
                                      const StopwordSet &stopwords,
                                      std::uint64_t min_freq);

struct PairHash {
  size_t operator()(const std::pair<std::string, std::string> &p) const {
    size_t h = std::hash<std::string>()(p.first);
    return h ^ (std::hash<std::string>()(p.second) + 0x9E3779B97F4A7C15ULL +
                (h << 6) + (h >> 2));
  }
};

// Lowercased unigram and within-line bigram counts.
class NGramTable {
 public:
  using UnigramMap = std::unordered_map<std::string, std::uint64_t>;
  using BigramMap = std::unordered_map<std::pair<std::string, std::string>,
                                       std::uint64_t, PairHash>;

  NGramTable() = default;

  static NGramTable Build(std::span<const TokenLine> lines, double alpha = 1.0);
  static NGramTable Build(std::span<const Token> tokens, double alpha = 1.0);

  // Words are looked up as given; callers pass lowercased forms.
  std::uint64_t Unigram(const std::string &word) const;
  std::uint64_t Bigram(const std::string &prev, const std::string &word) const;

  const UnigramMap &unigrams() const { return unigrams_; }
  const BigramMap &bigrams() const { return bigrams_; }
  std::uint64_t total_tokens() const { return total_tokens_; }
  std::uint64_t vocab_size() const { return unigrams_.size(); }
  double alpha() const { return alpha_; }

 private:
  void AddLine(std::span<const Token> tokens);

  UnigramMap unigrams_;
  BigramMap bigrams_;
  std::uint64_t total_tokens_ = 0;
  double alpha_ = 1.0;
};

}  // namespace hashseg

#endif  // HASHSEG_TEXT_CORPUS_H_
