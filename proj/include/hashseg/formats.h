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
#ifndef HASHSEG_FORMATS_H_
#define HASHSEG_FORMATS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hashseg/active_learning.h"
#include "hashseg/eval_viz.h"
#include "hashseg/synth_gen.h"
#include "hashseg/text_corpus.h"

namespace hashseg {

// File readers throw Error(kIo) when a file cannot be opened and
// Error(kMalformedInput) with the 1-based line number for bad content.
// Writers produce byte-identical output for identical inputs.

std::string ReadTextFile(const std::string &path);
void WriteTextFile(const std::string &path, std::string_view contents);

// One lowercase word per line; blank lines ignored.
StopwordSet ReadStopwords(const std::string &path);

// ngram<TAB>frequency
std::string FormatNGrams(std::span<const NGramCount> ngrams);
std::vector<NGramCount> ParseNGrams(std::string_view text);

// hashtag<TAB>gold_segmentation<TAB>type_id, gold words space-joined. The
// type column is optional on input (missing means -1).
std::string FormatDataset(std::span<const LabeledHashtag> items);
std::vector<LabeledHashtag> ParseDataset(std::string_view text);

// First column of every non-blank line.
std::vector<std::u32string> ParseHashtags(std::string_view text);

std::string JoinWords(std::span<const std::u32string> words);

// Full report as JSON, and one TSV summary line:
//   total<TAB>correct<TAB>accuracy
std::string ReportToJson(const EvalReport &report);
std::string ReportSummaryTsv(const EvalReport &report);

// Versioned JSON run log and a round,train_size,accuracy CSV.
inline constexpr int kAlLogSchemaVersion = 1;
std::string AlLogToJson(std::span<const AlRoundLog> rounds);
std::string AlLogToCsv(std::span<const AlRoundLog> rounds);

// char,category,x,y
std::string ProjectionToCsv(std::span<const CharPoint> points);

}  // namespace hashseg

#endif  // HASHSEG_FORMATS_H_
