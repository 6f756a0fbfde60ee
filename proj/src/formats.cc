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
#include "hashseg/formats.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hashseg/error.h"
#include "hashseg/unicode.h"
#include "json.hpp"

namespace hashseg {

namespace {

using nlohmann::ordered_json;

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> cols;
  size_t start = 0;
  for (;;) {
    size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

[[noreturn]] void Malformed(size_t line_no, const std::string &what) {
  throw Error(ErrorKind::kMalformedInput,
              "line " + std::to_string(line_no) + ": " + what);
}

template <typename T>
bool ParseNumber(std::string_view s, T *out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string FormatDouble(double v, const char *fmt) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::vector<std::string> Utf8Words(std::span<const std::u32string> words) {
  std::vector<std::string> out;
  for (const auto &w : words) out.push_back(EncodeUtf8(w));
  return out;
}

}  // namespace

std::string ReadTextFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string &path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path);
}

StopwordSet ReadStopwords(const std::string &path) {
  StopwordSet out;
  const std::string text = ReadTextFile(path);
  for (std::string_view line : SplitLines(text)) {
    if (IsBlank(line)) continue;
    size_t b = line.find_first_not_of(" \t");
    size_t e = line.find_last_not_of(" \t");
    out.insert(ToLowerUtf8(line.substr(b, e - b + 1)));
  }
  return out;
}

std::string FormatNGrams(std::span<const NGramCount> ngrams) {
  std::string out;
  for (const NGramCount &ng : ngrams) {
    out += ng.ngram;
    out += '\t';
    out += std::to_string(ng.frequency);
    out += '\n';
  }
  return out;
}

std::vector<NGramCount> ParseNGrams(std::string_view text) {
  std::vector<NGramCount> out;
  std::vector<std::string_view> lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (IsBlank(lines[i])) continue;
    auto cols = SplitTabs(lines[i]);
    if (cols.size() != 2 || cols[0].empty()) {
      Malformed(i + 1, "expected ngram<TAB>frequency");
    }
    NGramCount ng;
    ng.ngram = std::string(cols[0]);
    if (!ParseNumber(cols[1], &ng.frequency)) {
      Malformed(i + 1, "bad frequency '" + std::string(cols[1]) + "'");
    }
    out.push_back(std::move(ng));
  }
  return out;
}

std::string JoinWords(std::span<const std::u32string> words) {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    out += EncodeUtf8(words[i]);
  }
  return out;
}

std::string FormatDataset(std::span<const LabeledHashtag> items) {
  std::string out;
  for (const LabeledHashtag &item : items) {
    out += EncodeUtf8(item.chars);
    out += '\t';
    out += JoinWords(item.gold);
    out += '\t';
    out += std::to_string(item.type_id);
    out += '\n';
  }
  return out;
}

std::vector<LabeledHashtag> ParseDataset(std::string_view text) {
  std::vector<LabeledHashtag> out;
  std::vector<std::string_view> lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (IsBlank(lines[i])) continue;
    auto cols = SplitTabs(lines[i]);
    if (cols.size() < 2 || cols.size() > 3 || cols[0].empty()) {
      Malformed(i + 1, "expected hashtag<TAB>segmentation[<TAB>type_id]");
    }
    LabeledHashtag item;
    item.chars = DecodeUtf8(cols[0]);
    std::u32string seg = DecodeUtf8(cols[1]);
    std::u32string word;
    for (char32_t ch : seg) {
      if (ch == U' ') {
        if (!word.empty()) item.gold.push_back(std::move(word));
        word.clear();
      } else {
        word.push_back(ch);
      }
    }
    if (!word.empty()) item.gold.push_back(std::move(word));
    if (cols.size() == 3 && !cols[2].empty()) {
      if (!ParseNumber(cols[2], &item.type_id)) {
        Malformed(i + 1, "bad type id '" + std::string(cols[2]) + "'");
      }
    }
    try {
      item.labels = AlignSegmentation(item.chars, item.gold);
    } catch (const Error &e) {
      Malformed(i + 1, e.what());
    }
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<std::u32string> ParseHashtags(std::string_view text) {
  std::vector<std::u32string> out;
  for (std::string_view line : SplitLines(text)) {
    if (IsBlank(line)) continue;
    std::string_view first = SplitTabs(line)[0];
    if (!first.empty() && first.front() == '#') first.remove_prefix(1);
    if (first.empty()) continue;
    out.push_back(DecodeUtf8(first));
  }
  return out;
}

std::string ReportToJson(const EvalReport &report) {
  ordered_json j;
  j["total"] = report.total;
  j["correct"] = report.correct;
  j["accuracy"] = report.accuracy;
  ordered_json per_type = ordered_json::object();
  for (const auto &[type, ts] : report.per_type) {
    per_type[std::to_string(type)] = {
        {"total", ts.total}, {"correct", ts.correct}, {"accuracy", ts.accuracy}};
  }
  j["per_type"] = std::move(per_type);
  ordered_json errors = ordered_json::array();
  for (const ErrorSample &e : report.error_samples) {
    errors.push_back({{"hashtag", EncodeUtf8(e.hashtag)},
                      {"gold", Utf8Words(e.gold)},
                      {"predicted", Utf8Words(e.predicted)}});
  }
  j["error_samples"] = std::move(errors);
  return j.dump(2) + "\n";
}

std::string ReportSummaryTsv(const EvalReport &report) {
  return std::to_string(report.total) + "\t" + std::to_string(report.correct) +
         "\t" + FormatDouble(report.accuracy, "%.6f") + "\n";
}

std::string AlLogToJson(std::span<const AlRoundLog> rounds) {
  ordered_json j;
  j["schema_version"] = kAlLogSchemaVersion;
  ordered_json arr = ordered_json::array();
  for (const AlRoundLog &r : rounds) {
    ordered_json hist = ordered_json::object();
    for (const auto &[type, count] : r.type_histogram) {
      hist[std::to_string(type)] = count;
    }
    arr.push_back({{"round_index", r.round_index},
                   {"train_size", r.train_size},
                   {"test_accuracy", r.test_accuracy},
                   {"type_histogram", std::move(hist)},
                   {"selected_ids", r.selected_ids}});
  }
  j["rounds"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string AlLogToCsv(std::span<const AlRoundLog> rounds) {
  std::string out = "round,train_size,accuracy\n";
  for (const AlRoundLog &r : rounds) {
    out += std::to_string(r.round_index) + "," + std::to_string(r.train_size) +
           "," + FormatDouble(r.test_accuracy, "%.6f") + "\n";
  }
  return out;
}

std::string ProjectionToCsv(std::span<const CharPoint> points) {
  std::string out = "char,category,x,y\n";
  for (const CharPoint &p : points) {
    std::string ch = EncodeUtf8(p.ch);
    if (ch == "," || ch == "\"" || ch == "\n" || ch == "\r") {
      ch = "\"" + (ch == "\"" ? std::string("\"\"") : ch) + "\"";
    }
    out += ch + "," + std::string(CharCategory(p.ch)) + "," +
           FormatDouble(p.x, "%.10g") + "," + FormatDouble(p.y, "%.10g") + "\n";
  }
  return out;
}

}  // namespace hashseg
