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
#include "hashseg/lm_baseline.h"

#include <cmath>
#include <limits>

#include "hashseg/error.h"
#include "hashseg/unicode.h"

namespace hashseg {

double UnigramLogProb(const NGramTable &table, const std::string &word) {
  const double alpha = table.alpha();
  const double denom = static_cast<double>(table.total_tokens()) +
                       alpha * static_cast<double>(table.vocab_size());
  if (denom <= 0.0) return 0.0;
  const double numer = static_cast<double>(table.Unigram(word)) + alpha;
  return std::log(numer / denom);
}

double BigramLogProb(const NGramTable &table, const std::string &prev,
                     const std::string &word) {
  const std::uint64_t pair = table.Bigram(prev, word);
  if (pair > 0) {
    return std::log(static_cast<double>(pair) /
                    static_cast<double>(table.Unigram(prev)));
  }
  return UnigramLogProb(table, word);
}

double ScoreWords(const NGramTable &table,
                  const std::vector<std::string> &lowered_words,
                  ScoringMode mode) {
  double score = 0.0;
  for (size_t i = 0; i < lowered_words.size(); ++i) {
    if (i == 0 || mode == ScoringMode::kUnigram) {
      score += UnigramLogProb(table, lowered_words[i]);
    } else {
      score += BigramLogProb(table, lowered_words[i - 1], lowered_words[i]);
    }
  }
  return score;
}

namespace {

// Best path ending with the word text[start, end). Paths are compared by
// score, then word count, then the lowercased word sequence.
struct Cell {
  bool reachable = false;
  double score = -std::numeric_limits<double>::infinity();
  int words = 0;
  int prev_start = -1;  // start of the previous word, -1 for the first word
};

}  // namespace

SegmentationHypothesis SegmentDp(const NGramTable &table,
                                 std::u32string_view input,
                                 const SegmenterOptions &options) {
  if (options.max_word_len < 1) {
    throw Error(ErrorKind::kInvalidArgument, "max_word_len must be >= 1");
  }
  // Strip underscores, remembering where they forced a boundary.
  std::u32string text;
  std::u32string original;
  std::vector<bool> forced_boundary;  // boundary allowed only after pos i
  for (char32_t ch : input) {
    if (ch == U'_') {
      if (!forced_boundary.empty()) forced_boundary.back() = true;
      continue;
    }
    original.push_back(ch);
    text.push_back(ToLower(ch));
    forced_boundary.push_back(false);
  }
  const int n = static_cast<int>(text.size());
  if (n == 0) {
    throw Error(ErrorKind::kInvalidArgument, "cannot segment an empty hashtag");
  }
  const int max_len = options.max_word_len;

  // A word [s, e) may not contain a forced boundary strictly inside it.
  std::vector<int> next_forced(n + 1, n);  // first forced end >= position
  for (int i = n - 1; i >= 0; --i) {
    next_forced[i] = forced_boundary[i] ? i + 1 : next_forced[i + 1];
  }
  auto word_ok = [&](int s, int e) {
    return e - s <= max_len && e <= next_forced[s];
  };

  std::vector<std::vector<std::string>> word_cache(n);
  auto word_at = [&](int s, int e) -> const std::string & {
    auto &row = word_cache[s];
    if (row.empty()) row.resize(n - s);
    std::string &w = row[e - s - 1];
    if (w.empty()) w = EncodeUtf8(std::u32string_view(text).substr(s, e - s));
    return w;
  };

  // cells[e][s]: best path covering [0, e) whose last word is [s, e).
  std::vector<std::vector<Cell>> cells(n + 1, std::vector<Cell>(n));

  // Lexicographic comparison of the word sequences behind two cells with the
  // same end position.
  auto collect = [&](int e, int s) {
    std::vector<std::string> rev;
    while (s >= 0) {
      rev.push_back(word_at(s, e));
      int ps = cells[e][s].prev_start;
      e = s;
      s = ps;
    }
    return std::vector<std::string>(rev.rbegin(), rev.rend());
  };
  auto better = [&](double score, int words, int s, int ps,
                    const Cell &incumbent, int inc_ps) {
    if (!incumbent.reachable) return true;
    if (score != incumbent.score) return score > incumbent.score;
    if (words != incumbent.words) return words < incumbent.words;
    if (ps == inc_ps) return false;
    // Same last word; compare the prefixes.
    std::vector<std::string> a = ps < 0 ? std::vector<std::string>{}
                                        : collect(s, ps);
    std::vector<std::string> b = inc_ps < 0 ? std::vector<std::string>{}
                                            : collect(s, inc_ps);
    return a < b;
  };

  for (int e = 1; e <= n; ++e) {
    for (int s = std::max(0, e - max_len); s < e; ++s) {
      if (!word_ok(s, e)) continue;
      const std::string &word = word_at(s, e);
      Cell &cell = cells[e][s];
      if (s == 0) {
        cell.reachable = true;
        cell.score = UnigramLogProb(table, word);
        cell.words = 1;
        cell.prev_start = -1;
        continue;
      }
      for (int ps = std::max(0, s - max_len); ps < s; ++ps) {
        const Cell &prev = cells[s][ps];
        if (!prev.reachable) continue;
        double step = options.mode == ScoringMode::kUnigram
                          ? UnigramLogProb(table, word)
                          : BigramLogProb(table, word_at(ps, s), word);
        double score = prev.score + step;
        int words = prev.words + 1;
        if (better(score, words, s, ps, cell, cell.prev_start)) {
          cell.reachable = true;
          cell.score = score;
          cell.words = words;
          cell.prev_start = ps;
        }
      }
    }
  }

  // Choose the best final cell with the same ordering.
  int best_s = -1;
  for (int s = 0; s < n; ++s) {
    const Cell &c = cells[n][s];
    if (!c.reachable) continue;
    if (best_s < 0) {
      best_s = s;
      continue;
    }
    const Cell &b = cells[n][best_s];
    if (c.score != b.score) {
      if (c.score > b.score) best_s = s;
    } else if (c.words != b.words) {
      if (c.words < b.words) best_s = s;
    } else if (collect(n, s) < collect(n, best_s)) {
      best_s = s;
    }
  }

  SegmentationHypothesis hyp;
  hyp.log_score = cells[n][best_s].score;
  std::vector<std::pair<int, int>> spans;
  for (int e = n, s = best_s; s >= 0;) {
    spans.emplace_back(s, e);
    int ps = cells[e][s].prev_start;
    e = s;
    s = ps;
  }
  for (auto it = spans.rbegin(); it != spans.rend(); ++it) {
    hyp.words.push_back(original.substr(it->first, it->second - it->first));
  }
  return hyp;
}

}  // namespace hashseg
