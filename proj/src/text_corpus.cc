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
#include "hashseg/text_corpus.h"

#include <algorithm>

#include "hashseg/unicode.h"

namespace hashseg {

namespace {

bool IsInnerJoiner(char32_t ch) {
  return ch == U'\'' || ch == U'-' || ch == 0x2019;
}

void FlushPiece(std::u32string_view piece, std::vector<Token> *out) {
  size_t begin = 0;
  size_t end = piece.size();
  while (begin < end && !IsAlnum(piece[begin])) ++begin;
  while (end > begin && !IsAlnum(piece[end - 1])) --end;
  if (begin == end) return;
  std::u32string_view core = piece.substr(begin, end - begin);
  out->push_back(Token{EncodeUtf8(core), ClassifyToken(core)});
}

void TokenizeInto(std::u32string_view text, std::vector<Token> *out) {
  size_t start = 0;
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || IsSpace(text[i])) {
      if (i > start) FlushPiece(text.substr(start, i - start), out);
      start = i + 1;
    }
  }
}

std::string JoinSurfaces(std::span<const Token> tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i].surface;
  }
  return out;
}

}  // namespace

std::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kLowerWord: return "lowercase-word";
    case TokenKind::kCapitalizedWord: return "capitalized-word";
    case TokenKind::kUpperWord: return "uppercase-word";
    case TokenKind::kDigitRun: return "digit-run";
    case TokenKind::kOther: return "other";
  }
  return "other";
}

TokenKind ClassifyToken(std::u32string_view surface) {
  if (surface.empty()) return TokenKind::kOther;
  if (std::all_of(surface.begin(), surface.end(), IsDigit)) {
    return surface.size() <= 4 ? TokenKind::kDigitRun : TokenKind::kOther;
  }
  int upper = 0;
  int lower = 0;
  int letters = 0;
  bool first_letter_upper = false;
  for (size_t i = 0; i < surface.size(); ++i) {
    char32_t ch = surface[i];
    CharClass cls = Classify(ch);
    if (cls == CharClass::kUpper || cls == CharClass::kLower ||
        cls == CharClass::kCaseless) {
      if (letters == 0) first_letter_upper = cls == CharClass::kUpper;
      ++letters;
      if (cls == CharClass::kUpper) ++upper;
      if (cls == CharClass::kLower) ++lower;
    } else if (IsInnerJoiner(ch) && i > 0 && i + 1 < surface.size()) {
      continue;
    } else {
      return TokenKind::kOther;
    }
  }
  if (upper == 0) return TokenKind::kLowerWord;
  if (upper == 1 && first_letter_upper) return TokenKind::kCapitalizedWord;
  if (lower == 0 && upper >= 2) return TokenKind::kUpperWord;
  return TokenKind::kOther;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> out;
  TokenizeInto(DecodeUtf8(text), &out);
  return out;
}

std::vector<TokenLine> TokenizeLines(std::string_view text) {
  std::vector<TokenLine> lines;
  if (text.empty()) return lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    // A trailing newline does not open another line.
    if (nl == text.size() && start == text.size() && !lines.empty()) break;
    TokenLine line;
    TokenizeInto(DecodeUtf8(text.substr(start, nl - start)), &line);
    lines.push_back(std::move(line));
    start = nl + 1;
  }
  return lines;
}

std::vector<NGramCount> ExtractNGrams(std::span<const TokenLine> lines,
                                      int min_n, int max_n,
                                      const StopwordSet &stopwords,
                                      std::uint64_t min_freq) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const TokenLine &line : lines) {
    // Tokens that may take part in an n-gram.
    std::vector<bool> usable(line.size());
    for (size_t i = 0; i < line.size(); ++i) {
      usable[i] = line[i].kind != TokenKind::kOther &&
                  !stopwords.contains(ToLowerUtf8(line[i].surface));
    }
    for (int n = min_n; n <= max_n; ++n) {
      for (size_t i = 0; i + n <= line.size(); ++i) {
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) ok = usable[i + k];
        if (!ok) continue;
        ++counts[JoinSurfaces(std::span(line).subspan(i, n))];
      }
    }
  }
  std::vector<NGramCount> out;
  for (auto &[ngram, freq] : counts) {
    if (freq >= min_freq) out.push_back(NGramCount{ngram, freq});
  }
  std::sort(out.begin(), out.end(),
            [](const NGramCount &a, const NGramCount &b) {
              if (a.frequency != b.frequency) return a.frequency > b.frequency;
              return a.ngram < b.ngram;
            });
  return out;
}

std::vector<NGramCount> ExtractNGrams(std::span<const Token> tokens,
                                      int min_n, int max_n,
                                      const StopwordSet &stopwords,
                                      std::uint64_t min_freq) {
  std::vector<TokenLine> lines{TokenLine(tokens.begin(), tokens.end())};
  return ExtractNGrams(lines, min_n, max_n, stopwords, min_freq);
}

NGramTable NGramTable::Build(std::span<const TokenLine> lines, double alpha) {
  NGramTable table;
  table.alpha_ = alpha;
  for (const TokenLine &line : lines) table.AddLine(line);
  return table;
}

NGramTable NGramTable::Build(std::span<const Token> tokens, double alpha) {
  NGramTable table;
  table.alpha_ = alpha;
  table.AddLine(tokens);
  return table;
}

void NGramTable::AddLine(std::span<const Token> tokens) {
  std::string prev;
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::string word = ToLowerUtf8(tokens[i].surface);
    ++unigrams_[word];
    ++total_tokens_;
    if (i > 0) ++bigrams_[{prev, word}];
    prev = std::move(word);
  }
}

std::uint64_t NGramTable::Unigram(const std::string &word) const {
  auto it = unigrams_.find(word);
  return it == unigrams_.end() ? 0 : it->second;
}

std::uint64_t NGramTable::Bigram(const std::string &prev,
                                 const std::string &word) const {
  auto it = bigrams_.find({prev, word});
  return it == bigrams_.end() ? 0 : it->second;
}

}  // namespace hashseg
