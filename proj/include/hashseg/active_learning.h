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
#ifndef HASHSEG_ACTIVE_LEARNING_H_
#define HASHSEG_ACTIVE_LEARNING_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hashseg/seg_model.h"
#include "hashseg/synth_gen.h"

namespace hashseg {

enum class RetrainMode {
  kContinue,     // warm-start from the previous round's weights
  kFromScratch,  // reinitialize from the seed every round
};

struct AlConfig {
  size_t round_size = 1000;
  int epochs_per_round = 2;
  std::uint64_t seed = 0;
  RetrainMode retrain_mode = RetrainMode::kContinue;
  double learning_rate = 0.1;
  double clip_norm = 5.0;
  ModelConfig model;
  // Stop after this many rounds; 0 runs until the pool is used up.
  size_t max_rounds = 0;
};

struct AlRoundLog {
  int round_index = 0;  // 1-based
  size_t train_size = 0;
  std::vector<size_t> selected_ids;  // pool indices added this round
  double test_accuracy = 0.0;
  // Selected items per generator type; empty when the pool lacks type ids.
  std::map<int, size_t> type_histogram;

  bool operator==(const AlRoundLog &) const = default;
};

// Positions of the k candidates with the lowest MNLP, ascending, ties by
// position. Throws Error(kInvalidArgument) if k exceeds the candidate count.
std::vector<size_t> SelectLeastConfident(
    const ModelCheckpoint &chk, std::span<const LabeledHashtag> candidates,
    size_t k);

// Round 1 trains on round_size pool items drawn at random. Every later round
// scores the rest of the pool, moves the round_size least confident items
// into the training set and retrains on the whole set. The vocabulary comes
// from the full pool. Throws Error(kInvalidArgument) when the pool is smaller
// than round_size, round_size is 0 or the test set is empty.
std::vector<AlRoundLog> AlRun(std::span<const LabeledHashtag> pool,
                              std::span<const LabeledHashtag> test,
                              const AlConfig &config,
                              ModelCheckpoint *final_model = nullptr);

}  // namespace hashseg

#endif  // HASHSEG_ACTIVE_LEARNING_H_
