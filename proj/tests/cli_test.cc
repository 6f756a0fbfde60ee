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
#include <sys/wait.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"
#include "hashseg/formats.h"
#include "hashseg/seg_model.h"
#include "test_util.h"

namespace hashseg {
namespace {

using testing::TempDir;

const std::string kCli = HASHSEG_CLI_PATH;
const std::string kToyCorpus = std::string(HASHSEG_DATA_DIR) + "/corpus/toy_en.txt";
const std::string kStopwords = std::string(HASHSEG_DATA_DIR) + "/stopwords/en.txt";

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

// Runs the CLI inside dir with the given arguments.
RunResult Run(const TempDir &dir, const std::string &args) {
  const std::string out = dir.File("stdout.txt");
  const std::string err = dir.File("stderr.txt");
  const std::string cmd = "cd '" + dir.path().string() + "' && '" + kCli +
                          "' " + args + " > '" + out + "' 2> '" + err + "'";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = ReadTextFile(out);
  r.err = ReadTextFile(err);
  return r;
}

std::string Quote(const std::string &path) { return "'" + path + "'"; }

// Builds ngrams, a training set and a test set in dir.
void Prepare(const TempDir &dir) {
  REQUIRE(Run(dir, "ngrams --corpus " + Quote(kToyCorpus) + " --stopwords " +
                       Quote(kStopwords) + " -o ngrams.tsv")
              .code == 0);
  REQUIRE(Run(dir, "generate --ngrams ngrams.tsv --count 200 --seed 1 -o train.tsv")
              .code == 0);
  REQUIRE(Run(dir, "generate --ngrams ngrams.tsv --count 50 --seed 2 -o test.tsv")
              .code == 0);
}

const char *kSmallModel = " --embed-dim 8 --hidden-dim 8 --epochs 2";

TEST_CASE("generate with zero count writes an empty dataset") {
  TempDir dir("cli_zero");
  auto r = Run(dir, "generate --count 0 -o empty.tsv");
  CHECK(r.code == 0);
  CHECK(ReadTextFile(dir.File("empty.tsv")).empty());
  CHECK(ParseDataset(ReadTextFile(dir.File("empty.tsv"))).empty());
  CHECK(ReadTextFile(dir.File("empty.tsv.config.toml")).find("count=0") !=
        std::string::npos);
}

TEST_CASE("toy pipeline") {
  TempDir dir("cli_pipeline");
  Prepare(dir);
  const std::string train_before = ReadTextFile(dir.File("train.tsv"));
  auto train = Run(dir, std::string("train --train train.tsv --seed 3 -o m.bin") +
                            kSmallModel);
  REQUIRE(train.code == 0);
  CHECK(train.err.find("epoch 2 loss") != std::string::npos);
  CHECK(ReadTextFile(dir.File("train.tsv")) == train_before);

  auto eval = Run(dir, "eval --test test.tsv --model m.bin -o report.json");
  REQUIRE(eval.code == 0);
  auto cols = eval.out.substr(0, eval.out.find('\n'));
  const double acc = std::stod(cols.substr(cols.rfind('\t') + 1));
  CHECK(acc >= 0.0);
  CHECK(acc <= 1.0);
  CHECK(cols.rfind("50\t", 0) == 0);

  auto base = Run(dir, "eval --test test.tsv --corpus " + Quote(kToyCorpus));
  REQUIRE(base.code == 0);

  WriteTextFile(dir.File("tags.txt"), "#NewYork\nwhite_whale\n");
  auto seg = Run(dir, "segment --model m.bin --input tags.txt");
  REQUIRE(seg.code == 0);
  CHECK(seg.out.rfind("NewYork\t", 0) == 0);
  auto lm = Run(dir, "baseline --corpus " + Quote(kToyCorpus) +
                         " --input tags.txt --max-word-len 12");
  REQUIRE(lm.code == 0);
  CHECK(lm.out.find("white_whale\twhite whale\n") != std::string::npos);

  auto viz = Run(dir, "viz-embeddings --model m.bin -o proj.csv");
  REQUIRE(viz.code == 0);
  CHECK(ReadTextFile(dir.File("proj.csv")).rfind("char,category,x,y\n", 0) == 0);

  auto al = Run(dir,
                "al-run --pool train.tsv --test test.tsv --round-size 100 "
                "--retrain-mode scratch --epochs 1 --embed-dim 4 --hidden-dim 4 "
                "--csv al.csv -o al.json");
  REQUIRE(al.code == 0);
  CHECK(ReadTextFile(dir.File("al.csv")) .find("2,200,") != std::string::npos);
  CHECK(ReadTextFile(dir.File("al.json")).find("\"schema_version\": 1") !=
        std::string::npos);
}

TEST_CASE("same seed gives identical files") {
  TempDir a("cli_det_a"), b("cli_det_b");
  for (const TempDir *dir : {&a, &b}) {
    Prepare(*dir);
    REQUIRE(Run(*dir, std::string("train --train train.tsv --seed 4 -o m.bin") +
                          kSmallModel)
                .code == 0);
    REQUIRE(Run(*dir, "eval --test test.tsv --model m.bin -o r.json").code == 0);
  }
  for (const char *f : {"ngrams.tsv", "train.tsv", "test.tsv", "m.bin",
                        "m.bin.config.toml", "r.json"}) {
    CAPTURE(f);
    CHECK(ReadTextFile(a.File(f)) == ReadTextFile(b.File(f)));
  }
  REQUIRE(Run(a, "generate --ngrams ngrams.tsv --count 200 --seed 5 -o other.tsv")
              .code == 0);
  CHECK(ReadTextFile(a.File("other.tsv")) != ReadTextFile(a.File("train.tsv")));
}

TEST_CASE("config precedence and sidecar") {
  TempDir dir("cli_config");
  Prepare(dir);
  WriteTextFile(dir.File("run.toml"),
                "[train]\nembed-dim = 6\nhidden-dim = 5\nepochs = 1\n"
                "[generate]\ncount = 3\n");
  REQUIRE(Run(dir, "--config run.toml train --train train.tsv --epochs 2 -o m.bin")
              .code == 0);
  ModelCheckpoint chk = LoadCheckpoint(dir.File("m.bin"));
  CHECK(chk.config.embed_dim == 6);
  CHECK(chk.config.hidden_dim == 5);
  const std::string sidecar = ReadTextFile(dir.File("m.bin.config.toml"));
  CHECK(sidecar.rfind("[train]\n", 0) == 0);
  CHECK(sidecar.find("epochs=2") != std::string::npos);
  CHECK(sidecar.find("embed-dim=6") != std::string::npos);
  CHECK(sidecar.find("lr=0.1") != std::string::npos);

  // The sidecar replays the run.
  REQUIRE(Run(dir, "--config m.bin.config.toml train -o replay.bin").code == 0);
  CHECK(ReadTextFile(dir.File("replay.bin")) == ReadTextFile(dir.File("m.bin")));
}

TEST_CASE("errors map to categories and exit codes") {
  TempDir dir("cli_errors");
  Prepare(dir);
  auto missing = Run(dir, "eval --test nope.tsv --corpus x");
  CHECK(missing.code == 3);
  CHECK(missing.err.rfind("error[io]:", 0) == 0);

  WriteTextFile(dir.File("bad.tsv"), "ab\ta b\t1\nabc\tab\tx\n");
  auto bad = Run(dir, "train --train bad.tsv -o m.bin");
  CHECK(bad.code == 4);
  CHECK(bad.err.rfind("error[malformed-input]:", 0) == 0);
  CHECK(bad.err.find("line 2") != std::string::npos);

  WriteTextFile(dir.File("junk.bin"), "not a checkpoint at all");
  WriteTextFile(dir.File("tags.txt"), "abc\n");
  auto corrupt = Run(dir, "segment --model junk.bin --input tags.txt");
  CHECK(corrupt.code == 5);
  CHECK(corrupt.err.rfind("error[corrupt-checkpoint]:", 0) == 0);

  // Right magic, unknown version.
  WriteTextFile(dir.File("future.bin"), "HSEG but not a checkpoint");
  auto future = Run(dir, "segment --model future.bin --input tags.txt");
  CHECK(future.code == 6);
  CHECK(future.err.rfind("error[version-mismatch]:", 0) == 0);

  auto both = Run(dir, "eval --test test.tsv");
  CHECK(both.code == 2);
  CHECK(both.err.rfind("error[invalid-argument]:", 0) == 0);

  CHECK(Run(dir, "train --train train.tsv -o m.bin --merge max").code == 2);
  CHECK(Run(dir, "train --train train.tsv -o m.bin --format-version 2").code == 2);
  CHECK(Run(dir, "al-run --pool train.tsv --test test.tsv --retrain-mode warm")
            .code == 2);
  CHECK(Run(dir, "generate --count 5").code == 2);
  CHECK(Run(dir, "frobnicate").code == 2);
  CHECK(Run(dir, "--config missing.toml generate --count 0").code == 3);
}

TEST_CASE("help lists every flag with its default") {
  TempDir dir("cli_help");
  const std::vector<std::pair<std::string, std::vector<std::string>>> want = {
      {"ngrams", {"--min-n INT:POSITIVE [1]", "--max-n INT:POSITIVE [3]",
                  "--min-freq UINT [2]", "--format-version INT:{1} [1]"}},
      {"generate", {"--count UINT [1000]", "--seed UINT [0]"}},
      {"train", {"--epochs INT:NONNEGATIVE [5]", "--lr FLOAT [0.1]",
                 "--clip FLOAT [5]", "--embed-dim INT:POSITIVE [50]",
                 "--hidden-dim INT:POSITIVE [64]",
                 "--merge TEXT:{concat,sum} [concat]", "--seed UINT [0]"}},
      {"baseline", {"--max-word-len INT:POSITIVE [20]",
                    "--scoring TEXT:{bigram,unigram} [bigram]"}},
      {"eval", {"--max-word-len INT:POSITIVE [20]"}},
      {"al-run", {"--round-size UINT [1000]", "--epochs INT:NONNEGATIVE [2]",
                  "--retrain-mode TEXT:{continue,scratch} [continue]",
                  "--max-rounds UINT [0]", "--seed UINT [0]"}},
      {"segment", {"--format-version INT:{1} [1]"}},
      {"viz-embeddings", {"--format-version INT:{1} [1]"}},
  };
  for (const auto &[cmd, flags] : want) {
    auto r = Run(dir, cmd + " --help");
    CHECK(r.code == 0);
    for (const auto &flag : flags) {
      CAPTURE(cmd);
      CAPTURE(flag);
      CHECK(r.out.find(flag) != std::string::npos);
    }
  }
  auto all = Run(dir, "--help-all");
  CHECK(all.code == 0);
  CHECK(all.out.find("--retrain-mode") != std::string::npos);
  CHECK(all.out.find("--config") != std::string::npos);
}

}  // namespace
}  // namespace hashseg
