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
#include "hashseg/active_learning.h"

#include <algorithm>
#include <numeric>

#include "hashseg/error.h"
#include "hashseg/eval_viz.h"
#include "hashseg/rng.h"

namespace hashseg {

std::vector<size_t> SelectLeastConfident(
    const ModelCheckpoint &chk, std::span<const LabeledHashtag> candidates,
    size_t k) {
  if (k > candidates.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "cannot select more items than remain in the pool");
  }
  std::vector<double> scores(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    scores[i] = Predict(chk, candidates[i].chars).mnlp;
  }
  std::vector<size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return scores[a] < scores[b];
  });
  order.resize(k);
  return order;
}

std::vector<AlRoundLog> AlRun(std::span<const LabeledHashtag> pool,
                              std::span<const LabeledHashtag> test,
                              const AlConfig &config,
                              ModelCheckpoint *final_model) {
  if (config.round_size == 0) {
    throw Error(ErrorKind::kInvalidArgument, "round size must be positive");
  }
  if (pool.size() < config.round_size) {
    throw Error(ErrorKind::kInvalidArgument,
                "pool is smaller than one round");
  }
  if (test.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "test set is empty");
  }
  const bool typed = std::all_of(pool.begin(), pool.end(),
                                 [](const LabeledHashtag &h) {
                                   return h.type_id >= 0;
                                 });
  const Vocab vocab = Vocab::Build(pool);

  std::vector<size_t> remaining(pool.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<size_t> train_ids;

  Rng train_rng(config.seed);
  ModelCheckpoint chk;
  std::vector<AlRoundLog> logs;

  for (int round = 1; !remaining.empty(); ++round) {
    if (config.max_rounds > 0 && static_cast<size_t>(round) > config.max_rounds) {
      break;
    }
    const size_t k = std::min(config.round_size, remaining.size());
    std::vector<size_t> picked;
    if (round == 1) {
      std::vector<size_t> shuffled = remaining;
      Rng select_rng(DeriveSeed(config.seed, 0xA1));
      select_rng.Shuffle(std::span(shuffled));
      picked.assign(shuffled.begin(), shuffled.begin() + k);
    } else {
      std::vector<LabeledHashtag> candidates;
      candidates.reserve(remaining.size());
      for (size_t id : remaining) candidates.push_back(pool[id]);
      for (size_t pos : SelectLeastConfident(chk, candidates, k)) {
        picked.push_back(remaining[pos]);
      }
    }

    std::vector<size_t> picked_sorted = picked;
    std::sort(picked_sorted.begin(), picked_sorted.end());
    std::vector<size_t> rest;
    std::set_difference(remaining.begin(), remaining.end(),
                        picked_sorted.begin(), picked_sorted.end(),
                        std::back_inserter(rest));
    remaining = std::move(rest);
    std::vector<size_t> merged;
    std::merge(train_ids.begin(), train_ids.end(), picked_sorted.begin(),
               picked_sorted.end(), std::back_inserter(merged));
    train_ids = std::move(merged);

    std::vector<LabeledHashtag> train_set;
    train_set.reserve(train_ids.size());
    for (size_t id : train_ids) train_set.push_back(pool[id]);

    if (round == 1 || config.retrain_mode == RetrainMode::kFromScratch) {
      train_rng = Rng(config.seed);
      chk = InitCheckpoint(vocab, config.model, train_rng);
    }
    TrainEpochs(&chk, train_set, config.epochs_per_round, config.learning_rate,
                config.clip_norm, train_rng);

    AlRoundLog log;
    log.round_index = round;
    log.train_size = train_ids.size();
    log.selected_ids = picked;
    log.test_accuracy = Evaluate(chk, test).accuracy;
    if (typed) {
      for (size_t id : picked) ++log.type_histogram[pool[id].type_id];
    }
    logs.push_back(std::move(log));
  }
  if (final_model != nullptr) *final_model = std::move(chk);
  return logs;
}

}  // namespace hashseg
