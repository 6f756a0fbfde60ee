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

// hashseg command-line tool.

#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hashseg/active_learning.h"
#include "hashseg/error.h"
#include "hashseg/eval_viz.h"
#include "hashseg/formats.h"
#include "hashseg/lm_baseline.h"
#include "hashseg/seg_model.h"
#include "hashseg/synth_gen.h"
#include "hashseg/text_corpus.h"
#include "hashseg/unicode.h"

namespace hashseg {
namespace {

// Exit codes, one per error category.
constexpr int kExitInternal = 1;

int ExitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return 2;
    case ErrorKind::kIo: return 3;
    case ErrorKind::kMalformedInput: return 4;
    case ErrorKind::kCorruptCheckpoint: return 5;
    case ErrorKind::kVersionMismatch: return 6;
    case ErrorKind::kShapeMismatch: return 7;
  }
  return kExitInternal;
}

int ReportError(std::string_view category, const std::string &message,
                int code) {
  std::cerr << "error[" << category << "]: " << message << "\n";
  return code;
}

const std::map<std::string, MergeMode> kMergeNames = {
    {"concat", MergeMode::kConcat}, {"sum", MergeMode::kSum}};
const std::map<std::string, RetrainMode> kRetrainNames = {
    {"continue", RetrainMode::kContinue},
    {"scratch", RetrainMode::kFromScratch}};
const std::map<std::string, ScoringMode> kScoringNames = {
    {"bigram", ScoringMode::kBigramBackoff}, {"unigram", ScoringMode::kUnigram}};

struct ModelFlags {
  int embed_dim = ModelConfig().embed_dim;
  int hidden_dim = ModelConfig().hidden_dim;
  std::string merge = "concat";

  ModelConfig Config() const {
    return {embed_dim, hidden_dim, kMergeNames.at(merge)};
  }
};

struct Options {
  // Shared.
  std::uint64_t seed = 0;
  int format_version = 1;
  std::string output;

  // ngrams
  std::string corpus;
  std::string stopwords;
  int min_n = 1;
  int max_n = 3;
  std::uint64_t min_freq = 2;

  // generate
  std::string ngrams;
  size_t count = 1000;

  // train / al-run
  std::string train;
  int epochs = TrainConfig().epochs;
  double lr = TrainConfig().learning_rate;
  double clip = TrainConfig().clip_norm;
  ModelFlags model_flags;

  // segment / eval / viz-embeddings
  std::string model;
  std::string input;
  std::string test;

  // baseline
  int max_word_len = SegmenterOptions().max_word_len;
  std::string scoring = "bigram";

  // al-run
  std::string pool;
  size_t round_size = AlConfig().round_size;
  int epochs_per_round = AlConfig().epochs_per_round;
  std::string retrain_mode = "continue";
  size_t max_rounds = AlConfig().max_rounds;
  std::string csv;
  std::string model_out;
};

void Log(const std::string &line) { std::cerr << line << "\n"; }

// Writes to the declared path, or stdout when none was given.
void Emit(const std::string &path, std::string_view contents) {
  if (path.empty()) {
    std::cout << contents;
    std::cout.flush();
  } else {
    WriteTextFile(path, contents);
  }
}

void WriteSidecar(const CLI::App &cmd, const std::string &output) {
  if (output.empty()) return;
  WriteTextFile(output + ".config.toml",
                "[" + cmd.get_name() + "]\n" + cmd.config_to_str(true, false));
}

std::vector<LabeledHashtag> LoadDataset(const std::string &path) {
  return ParseDataset(ReadTextFile(path));
}

ModelCheckpoint LoadModel(const std::string &path, int format_version) {
  ModelCheckpoint chk = LoadCheckpoint(path);
  if (static_cast<int>(chk.format_version) != format_version) {
    throw Error(ErrorKind::kVersionMismatch,
                "checkpoint format " + std::to_string(chk.format_version) +
                    " does not match --format-version " +
                    std::to_string(format_version));
  }
  return chk;
}

NGramTable LoadTable(const std::string &corpus) {
  return NGramTable::Build(TokenizeLines(ReadTextFile(corpus)));
}

SegmenterOptions SegOptions(const Options &o) {
  SegmenterOptions s;
  s.max_word_len = o.max_word_len;
  s.mode = kScoringNames.at(o.scoring);
  return s;
}

void RunNgrams(const Options &o) {
  StopwordSet stop;
  if (!o.stopwords.empty()) stop = ReadStopwords(o.stopwords);
  auto lines = TokenizeLines(ReadTextFile(o.corpus));
  auto ngrams = ExtractNGrams(lines, o.min_n, o.max_n, stop, o.min_freq);
  Log("ngrams: " + std::to_string(ngrams.size()));
  Emit(o.output, FormatNGrams(ngrams));
}

void RunGenerate(const Options &o) {
  std::vector<NGramCount> ngrams;
  if (!o.ngrams.empty()) {
    ngrams = ParseNGrams(ReadTextFile(o.ngrams));
  } else if (o.count > 0) {
    throw Error(ErrorKind::kInvalidArgument, "--ngrams is required");
  }
  auto items = GenerateDataset(ngrams, BuiltinCatalog(), o.count, o.seed);
  Emit(o.output, FormatDataset(items));
}

void RunTrain(const Options &o) {
  auto data = LoadDataset(o.train);
  TrainConfig config;
  config.epochs = o.epochs;
  config.learning_rate = o.lr;
  config.clip_norm = o.clip;
  config.seed = o.seed;
  config.model = o.model_flags.Config();
  std::vector<double> losses;
  ModelCheckpoint chk = Train(data, config, &losses);
  for (size_t e = 0; e < losses.size(); ++e) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "epoch %zu loss %.6f", e + 1, losses[e]);
    Log(buf);
  }
  SaveCheckpoint(chk, o.output);
}

std::string SegmentationLines(
    const std::vector<std::u32string> &tags,
    const std::function<std::vector<std::u32string>(const std::u32string &)>
        &segment) {
  std::string out;
  for (const auto &tag : tags) {
    out += EncodeUtf8(tag);
    out += '\t';
    out += JoinWords(segment(tag));
    out += '\n';
  }
  return out;
}

bool HasText(const std::u32string &tag) {
  return tag.find_first_not_of(U'_') != std::u32string::npos;
}

void RunSegment(const Options &o) {
  ModelCheckpoint chk = LoadModel(o.model, o.format_version);
  auto tags = ParseHashtags(ReadTextFile(o.input));
  Emit(o.output, SegmentationLines(tags, [&](const std::u32string &tag) {
         return ApplyLabels(tag, Predict(chk, tag).labels);
       }));
}

void RunBaseline(const Options &o) {
  NGramTable table = LoadTable(o.corpus);
  auto tags = ParseHashtags(ReadTextFile(o.input));
  SegmenterOptions opt = SegOptions(o);
  Emit(o.output, SegmentationLines(tags, [&](const std::u32string &tag) {
         if (!HasText(tag)) return std::vector<std::u32string>{};
         return SegmentDp(table, tag, opt).words;
       }));
}

void RunEval(const Options &o) {
  if (o.model.empty() == o.corpus.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "pass exactly one of --model or --corpus");
  }
  auto test = LoadDataset(o.test);
  EvalReport report =
      o.model.empty()
          ? EvaluateBaseline(LoadTable(o.corpus), test, SegOptions(o))
          : Evaluate(LoadModel(o.model, o.format_version), test);
  if (!o.output.empty()) WriteTextFile(o.output, ReportToJson(report));
  std::cout << ReportSummaryTsv(report);
}

void RunAl(const Options &o) {
  auto pool = LoadDataset(o.pool);
  auto test = LoadDataset(o.test);
  AlConfig config;
  config.round_size = o.round_size;
  config.epochs_per_round = o.epochs_per_round;
  config.seed = o.seed;
  config.retrain_mode = kRetrainNames.at(o.retrain_mode);
  config.learning_rate = o.lr;
  config.clip_norm = o.clip;
  config.model = o.model_flags.Config();
  config.max_rounds = o.max_rounds;
  ModelCheckpoint final_model;
  auto rounds = AlRun(pool, test, config, &final_model);
  for (const AlRoundLog &r : rounds) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "round %d train_size %zu accuracy %.6f",
                  r.round_index, r.train_size, r.test_accuracy);
    Log(buf);
  }
  Emit(o.output, AlLogToJson(rounds));
  if (!o.csv.empty()) WriteTextFile(o.csv, AlLogToCsv(rounds));
  if (!o.model_out.empty()) SaveCheckpoint(final_model, o.model_out);
}

void RunViz(const Options &o) {
  ModelCheckpoint chk = LoadModel(o.model, o.format_version);
  EmbeddingProjection proj;
  auto points = ProjectEmbeddings(chk, &proj);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "sigma %.6g %.6g explained %.6f iterations %d",
                proj.singular_values[0], proj.singular_values[1],
                proj.explained_ratio, proj.iterations);
  Log(buf);
  Emit(o.output, ProjectionToCsv(points));
}

void AddShared(CLI::App *cmd, Options &o, bool seeded) {
  cmd->add_option("--format-version", o.format_version,
                  "File format version (only 1 is supported)")
      ->check(CLI::IsMember({1}));
  if (seeded) cmd->add_option("--seed", o.seed, "Random seed");
}

void AddModelFlags(CLI::App *cmd, Options &o) {
  cmd->add_option("--lr", o.lr, "SGD learning rate");
  cmd->add_option("--clip", o.clip, "Global gradient norm clip");
  cmd->add_option("--embed-dim", o.model_flags.embed_dim,
                  "Character embedding size")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--hidden-dim", o.model_flags.hidden_dim,
                  "LSTM units per direction")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--merge", o.model_flags.merge,
                  "BiLSTM merge: concat or sum")
      ->check(CLI::IsMember(kMergeNames).description("{concat,sum}"));
}

void AddBaselineFlags(CLI::App *cmd, Options &o) {
  cmd->add_option("--max-word-len", o.max_word_len, "Longest word considered")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--scoring", o.scoring, "Scoring model: bigram or unigram")
      ->check(CLI::IsMember(kScoringNames).description("{bigram,unigram}"));
}

int Main(int argc, char **argv) {
  CLI::App app{"Hashtag segmentation toolkit", "hashseg"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");
  app.set_config("--config", "",
                 "TOML file with one [subcommand] table of option values");
  Options o;

  auto *ngrams = app.add_subcommand("ngrams", "Corpus to n-gram TSV");
  AddShared(ngrams, o, false);
  ngrams->add_option("--corpus", o.corpus, "UTF-8 text corpus")->required();
  ngrams->add_option("--stopwords", o.stopwords, "Stopword list");
  ngrams->add_option("--min-n", o.min_n, "Smallest n")->check(CLI::PositiveNumber);
  ngrams->add_option("--max-n", o.max_n, "Largest n")->check(CLI::PositiveNumber);
  ngrams->add_option("--min-freq", o.min_freq, "Minimum n-gram frequency");
  ngrams->add_option("-o,--output", o.output, "Output TSV (stdout if empty)");

  auto *generate = app.add_subcommand("generate", "N-grams to labeled dataset");
  AddShared(generate, o, true);
  generate->add_option("--ngrams", o.ngrams, "N-gram TSV");
  generate->add_option("--count", o.count, "Number of hashtags");
  generate->add_option("-o,--output", o.output, "Output TSV (stdout if empty)");

  auto *train = app.add_subcommand("train", "Dataset to checkpoint");
  AddShared(train, o, true);
  train->add_option("--train", o.train, "Training dataset TSV")->required();
  train->add_option("--epochs", o.epochs, "Training epochs")
      ->check(CLI::NonNegativeNumber);
  AddModelFlags(train, o);
  train->add_option("-o,--output", o.output, "Checkpoint path")->required();

  auto *segment = app.add_subcommand("segment", "Segment hashtags with a model");
  AddShared(segment, o, false);
  segment->add_option("--model", o.model, "Checkpoint path")->required();
  segment->add_option("--input", o.input, "Hashtag list")->required();
  segment->add_option("-o,--output", o.output, "Output TSV (stdout if empty)");

  auto *baseline =
      app.add_subcommand("baseline", "Segment hashtags with the n-gram model");
  AddShared(baseline, o, false);
  baseline->add_option("--corpus", o.corpus, "UTF-8 text corpus")->required();
  baseline->add_option("--input", o.input, "Hashtag list")->required();
  AddBaselineFlags(baseline, o);
  baseline->add_option("-o,--output", o.output, "Output TSV (stdout if empty)");

  auto *eval = app.add_subcommand("eval", "Exact-match evaluation");
  AddShared(eval, o, false);
  eval->add_option("--test", o.test, "Test dataset TSV")->required();
  eval->add_option("--model", o.model, "Checkpoint to evaluate");
  eval->add_option("--corpus", o.corpus, "Corpus for the n-gram baseline");
  AddBaselineFlags(eval, o);
  eval->add_option("-o,--output", o.output, "JSON report path");

  auto *al = app.add_subcommand("al-run", "Active learning experiment");
  AddShared(al, o, true);
  al->add_option("--pool", o.pool, "Unlabeled pool dataset TSV")->required();
  al->add_option("--test", o.test, "Test dataset TSV")->required();
  al->add_option("--round-size", o.round_size, "Items added per round");
  al->add_option("--epochs", o.epochs_per_round, "Epochs per round")
      ->check(CLI::NonNegativeNumber);
  al->add_option("--retrain-mode", o.retrain_mode,
                 "Retraining: continue or scratch")
      ->check(CLI::IsMember(kRetrainNames).description("{continue,scratch}"));
  al->add_option("--max-rounds", o.max_rounds, "Round limit (0: no limit)");
  AddModelFlags(al, o);
  al->add_option("-o,--output", o.output, "JSON log (stdout if empty)");
  al->add_option("--csv", o.csv, "CSV learning curve path");
  al->add_option("--model-out", o.model_out, "Final checkpoint path");

  auto *viz = app.add_subcommand("viz-embeddings",
                                 "Checkpoint to 2-D embedding projection CSV");
  AddShared(viz, o, false);
  viz->add_option("--model", o.model, "Checkpoint path")->required();
  viz->add_option("-o,--output", o.output, "Output CSV (stdout if empty)");

  const std::vector<std::pair<CLI::App *, void (*)(const Options &)>> runs = {
      {ngrams, RunNgrams}, {generate, RunGenerate}, {train, RunTrain},
      {segment, RunSegment}, {baseline, RunBaseline}, {eval, RunEval},
      {al, RunAl}, {viz, RunViz}};

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::FileError &e) {
    return ReportError(ErrorKindName(ErrorKind::kIo), e.what(),
                       ExitCode(ErrorKind::kIo));
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return ReportError(ErrorKindName(ErrorKind::kInvalidArgument), e.what(),
                       ExitCode(ErrorKind::kInvalidArgument));
  }

  try {
    for (auto &[cmd, run] : runs) {
      if (!cmd->parsed()) continue;
      run(o);
      WriteSidecar(*cmd, o.output);
    }
  } catch (const Error &e) {
    return ReportError(ErrorKindName(e.kind()), e.what(), ExitCode(e.kind()));
  } catch (const std::exception &e) {
    return ReportError("internal", e.what(), kExitInternal);
  }
  return 0;
}

}  // namespace
}  // namespace hashseg

int main(int argc, char **argv) { return hashseg::Main(argc, argv); }
