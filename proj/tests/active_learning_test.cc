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
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "doctest.h"
#include "hashseg/active_learning.h"
#include "hashseg/error.h"
#include "hashseg/seg_model.h"
#include "hashseg/synth_gen.h"
#include "test_util.h"

namespace hashseg {
namespace {

using testing::RandomModel;
using testing::ThrownKind;

std::vector<LabeledHashtag> Pool(size_t count, std::uint64_t seed) {
  std::vector<NGramCount> ngrams = {
      {"photo of day", 9}, {"new york", 7},   {"white whale", 5},
      {"sea", 4},          {"captain ahab", 3}, {"ship", 3},
      {"old man", 2},      {"ocean", 2},       {"big blue sea", 2}};
  return GenerateDataset(ngrams, BuiltinCatalog(), count, seed);
}

AlConfig SmallConfig(size_t round_size) {
  AlConfig config;
  config.round_size = round_size;
  config.epochs_per_round = 1;
  config.seed = 17;
  config.model.embed_dim = 6;
  config.model.hidden_dim = 5;
  return config;
}

double ManualMnlp(const ModelCheckpoint &chk, const LabeledHashtag &item) {
  double s = 0.0;
  for (const LabelProbs &p : Forward(chk, item.chars)) {
    s += std::log(std::max(p[0], p[1]));
  }
  return s / static_cast<double>(item.chars.size());
}

TEST_CASE("select least confident") {
  auto chk = RandomModel(27, 4, 3, MergeMode::kConcat, 1, 1.5);
  auto items = Pool(40, 2);
  CHECK(SelectLeastConfident(chk, items, 0).empty());
  auto all = SelectLeastConfident(chk, items, items.size());
  std::vector<size_t> sorted_all = all;
  std::sort(sorted_all.begin(), sorted_all.end());
  std::vector<size_t> iota(items.size());
  std::iota(iota.begin(), iota.end(), 0);
  CHECK(sorted_all == iota);
  CHECK(ThrownKind([&] { SelectLeastConfident(chk, items, 41); }) ==
        ErrorKind::kInvalidArgument);

  // Sort oracle over independently recomputed scores.
  std::vector<std::pair<double, size_t>> scored;
  for (size_t i = 0; i < items.size(); ++i) {
    scored.emplace_back(ManualMnlp(chk, items[i]), i);
  }
  std::sort(scored.begin(), scored.end());
  auto got = SelectLeastConfident(chk, items, 10);
  for (size_t i = 0; i < 10; ++i) CHECK(got[i] == scored[i].second);
}

TEST_CASE("ties keep pool order") {
  auto chk = RandomModel(4, 3, 2, MergeMode::kConcat, 3);
  std::vector<LabeledHashtag> same(5, LabelsFromSegmentation(
                                           testing::Words({"ab", "c"})));
  CHECK(SelectLeastConfident(chk, same, 3) == std::vector<size_t>{0, 1, 2});
}

TEST_CASE("al run argument checks") {
  auto pool = Pool(10, 1);
  auto config = SmallConfig(20);
  CHECK(ThrownKind([&] { AlRun(pool, pool, config); }) ==
        ErrorKind::kInvalidArgument);
  config.round_size = 0;
  CHECK(ThrownKind([&] { AlRun(pool, pool, config); }) ==
        ErrorKind::kInvalidArgument);
  config.round_size = 5;
  CHECK(ThrownKind([&] { AlRun(pool, {}, config); }) ==
        ErrorKind::kInvalidArgument);
}

TEST_CASE("a single round equals plain training") {
  auto pool = Pool(30, 4);
  auto test = Pool(20, 5);
  auto config = SmallConfig(30);
  ModelCheckpoint al_model;
  auto logs = AlRun(pool, test, config, &al_model);
  REQUIRE(logs.size() == 1);
  CHECK(logs[0].train_size == 30);

  TrainConfig plain;
  plain.epochs = config.epochs_per_round;
  plain.seed = config.seed;
  plain.model = config.model;
  auto direct = Train(pool, plain);
  CHECK(SerializeCheckpoint(al_model) == SerializeCheckpoint(direct));
}

TEST_CASE("second round picks the least confident half") {
  auto pool = Pool(40, 6);
  auto test = Pool(10, 7);
  auto config = SmallConfig(20);

  auto one = config;
  one.max_rounds = 1;
  ModelCheckpoint after_one;
  auto first = AlRun(pool, test, one, &after_one);
  REQUIRE(first.size() == 1);

  auto logs = AlRun(pool, test, config);
  REQUIRE(logs.size() == 2);
  CHECK(logs[0] == first[0]);

  std::set<size_t> chosen(first[0].selected_ids.begin(),
                          first[0].selected_ids.end());
  std::vector<std::pair<double, size_t>> scored;
  for (size_t i = 0; i < pool.size(); ++i) {
    if (!chosen.contains(i)) scored.emplace_back(ManualMnlp(after_one, pool[i]), i);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<size_t> want;
  for (auto &[s, i] : scored) want.push_back(i);
  CHECK(logs[1].selected_ids == want);
}

TEST_CASE("al run invariants") {
  auto pool = Pool(55, 8);
  auto test = Pool(15, 9);
  for (RetrainMode mode : {RetrainMode::kContinue, RetrainMode::kFromScratch}) {
    auto config = SmallConfig(20);
    config.retrain_mode = mode;
    auto logs = AlRun(pool, test, config);
    REQUIRE(logs.size() == 3);
    std::set<size_t> seen;
    size_t expected_size = 0;
    for (size_t r = 0; r < logs.size(); ++r) {
      const AlRoundLog &log = logs[r];
      CHECK(log.round_index == static_cast<int>(r + 1));
      expected_size += log.selected_ids.size();
      CHECK(log.train_size == expected_size);
      CHECK(log.train_size == std::min<size_t>((r + 1) * 20, pool.size()));
      CHECK(log.test_accuracy >= 0.0);
      CHECK(log.test_accuracy <= 1.0);
      size_t hist = 0;
      for (auto &[type, n] : log.type_histogram) hist += n;
      CHECK(hist == log.selected_ids.size());
      for (size_t id : log.selected_ids) CHECK(seen.insert(id).second);
    }
    CHECK(seen.size() == pool.size());
    CHECK(logs == AlRun(pool, test, config));
  }
}

TEST_CASE("untyped pools have no histogram") {
  auto pool = Pool(20, 10);
  for (auto &item : pool) item.type_id = -1;
  auto logs = AlRun(pool, Pool(5, 11), SmallConfig(10));
  for (const auto &log : logs) CHECK(log.type_histogram.empty());
}

TEST_CASE("retrain modes differ after the first round") {
  auto pool = Pool(40, 12);
  auto test = Pool(10, 13);
  auto cont = SmallConfig(20);
  auto scratch = cont;
  scratch.retrain_mode = RetrainMode::kFromScratch;
  ModelCheckpoint a, b;
  auto la = AlRun(pool, test, cont, &a);
  auto lb = AlRun(pool, test, scratch, &b);
  CHECK(la[0] == lb[0]);
  CHECK(la[1].selected_ids == lb[1].selected_ids);
  CHECK(SerializeCheckpoint(a) != SerializeCheckpoint(b));
}

}  // namespace
}  // namespace hashseg
