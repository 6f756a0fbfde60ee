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
#ifndef HASHSEG_SEG_MODEL_H_
#define HASHSEG_SEG_MODEL_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hashseg/neural_core.h"
#include "hashseg/synth_gen.h"

namespace hashseg {

// Character vocabulary. Id 0 is reserved for unknown characters; known
// characters get ids 1..n in code point order.
class Vocab {
 public:
  static constexpr int kUnkId = 0;

  Vocab() = default;
  // Duplicates are removed; order of the argument does not matter.
  explicit Vocab(std::vector<char32_t> chars);
  static Vocab Build(std::span<const LabeledHashtag> dataset);

  int Lookup(char32_t ch) const;
  // Total ids including the unknown id.
  size_t size() const { return chars_.size() + 1; }
  // Known characters, index i holding id i + 1.
  const std::vector<char32_t> &chars() const { return chars_; }

  bool operator==(const Vocab &other) const { return chars_ == other.chars_; }

 private:
  std::vector<char32_t> chars_;
  std::unordered_map<char32_t, int> ids_;
};

// How the two directional states are merged before the output layer.
enum class MergeMode { kConcat = 0, kSum = 1 };

struct ModelConfig {
  int embed_dim = 50;
  int hidden_dim = 64;  // per direction
  MergeMode merge = MergeMode::kConcat;

  int MergedDim() const {
    return merge == MergeMode::kConcat ? 2 * hidden_dim : hidden_dim;
  }
  bool operator==(const ModelConfig &) const = default;
};

struct ModelParams {
  ModelParams() = default;
  ModelParams(size_t vocab_size, const ModelConfig &config);

  void Fill(double value);
  // Order: embedding, forward LSTM, backward LSTM, dense weights, dense bias.
  std::vector<std::span<double>> Tensors();

  bool operator==(const ModelParams &) const = default;

  Matrix embedding;  // |V| x d_e
  LstmParams forward;
  LstmParams backward;
  Matrix dense_weights;  // 2 x merged dim
  Vector dense_bias;     // 2
};

struct ModelCheckpoint {
  static constexpr std::uint32_t kFormatVersion = 1;

  std::uint32_t format_version = kFormatVersion;
  ModelConfig config;
  Vocab vocab;
  ModelParams params;

  bool operator==(const ModelCheckpoint &) const = default;
};

// Fresh model: Glorot-uniform matrices, zero biases, forget bias 1.
ModelCheckpoint InitCheckpoint(Vocab vocab, const ModelConfig &config,
                               Rng &rng);

using LabelProbs = std::array<double, 2>;

// Per-character label distributions. Throws Error(kInvalidArgument) on empty
// input.
std::vector<LabelProbs> Forward(const ModelCheckpoint &chk,
                                std::u32string_view chars);

// Summed per-character cross-entropy of the gold labels. Gradients are added
// into *grads (same shapes as chk.params) when grads is non-null.
double LossAndGradients(const ModelCheckpoint &chk, std::u32string_view chars,
                        std::span<const std::uint8_t> labels,
                        ModelParams *grads);

struct TrainConfig {
  int epochs = 5;
  double learning_rate = 0.1;
  double clip_norm = 5.0;
  std::uint64_t seed = 0;
  ModelConfig model;
};

// Runs epochs of per-example SGD over a shuffled copy of the dataset order.
// Returns the mean loss per example of each epoch.
std::vector<double> TrainEpochs(ModelCheckpoint *chk,
                                std::span<const LabeledHashtag> dataset,
                                int epochs, double learning_rate,
                                double clip_norm, Rng &rng);

// Builds the vocabulary from the dataset, initializes from config.seed and
// trains. Throws Error(kInvalidArgument) on an empty dataset.
ModelCheckpoint Train(std::span<const LabeledHashtag> dataset,
                      const TrainConfig &config,
                      std::vector<double> *epoch_losses = nullptr);

struct Prediction {
  Labels labels;
  std::vector<LabelProbs> probs;
  double mnlp = 0.0;
};

// Per-position argmax (ties to 0) with the last label forced to 1.
Prediction Predict(const ModelCheckpoint &chk, std::u32string_view chars);

// Length-normalized log-probability of the most likely label sequence. The
// per-position distributions are independent given the input, so the max
// over sequences is taken position by position.
double Mnlp(std::span<const LabelProbs> probs);

// Binary checkpoint format, all integers little-endian:
//   "HSEG" | u32 version | u32 merge | u32 embed_dim | u32 hidden_dim
//   | u32 n_chars | n_chars x (u8 byte length, UTF-8 bytes)
//   | u64 n_params | n_params x f64 | u64 FNV-1a of everything before it
// Parameters follow ModelParams::Tensors() order, matrices row-major.
std::string SerializeCheckpoint(const ModelCheckpoint &chk);
// Throws Error with kCorruptCheckpoint, kVersionMismatch or kShapeMismatch.
ModelCheckpoint DeserializeCheckpoint(std::string_view bytes);

void SaveCheckpoint(const ModelCheckpoint &chk, const std::string &path);
ModelCheckpoint LoadCheckpoint(const std::string &path);

}  // namespace hashseg

#endif  // HASHSEG_SEG_MODEL_H_
