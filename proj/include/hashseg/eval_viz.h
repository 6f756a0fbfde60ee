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
#ifndef HASHSEG_EVAL_VIZ_H_
#define HASHSEG_EVAL_VIZ_H_

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hashseg/lm_baseline.h"
#include "hashseg/neural_core.h"
#include "hashseg/seg_model.h"
#include "hashseg/synth_gen.h"

namespace hashseg {

struct TypeStats {
  size_t total = 0;
  size_t correct = 0;
  double accuracy = 0.0;
};

struct ErrorSample {
  std::u32string hashtag;
  std::vector<std::u32string> gold;
  std::vector<std::u32string> predicted;
};

struct EvalReport {
  static constexpr size_t kMaxErrorSamples = 50;

  size_t total = 0;
  size_t correct = 0;
  double accuracy = 0.0;
  std::map<int, TypeStats> per_type;  // items with type_id >= 0 only
  std::vector<ErrorSample> error_samples;  // first kMaxErrorSamples misses
};

// A prediction is correct when its canonical boundary labels equal the gold
// labels exactly. predicted[i] is the word sequence proposed for test[i].
// Throws Error(kInvalidArgument) for an empty test set or a size mismatch.
EvalReport EvaluateSegmentations(
    std::span<const LabeledHashtag> test,
    std::span<const std::vector<std::u32string>> predicted);

EvalReport Evaluate(const ModelCheckpoint &chk,
                    std::span<const LabeledHashtag> test);

EvalReport EvaluateBaseline(const NGramTable &table,
                            std::span<const LabeledHashtag> test,
                            const SegmenterOptions &options = {});

struct EmbeddingProjection {
  std::vector<std::array<double, 2>> points;  // one per input row
  std::array<double, 2> singular_values{0.0, 0.0};
  std::array<Vector, 2> axes;  // top right singular vectors
  double explained_ratio = 0.0;
  double residual = 0.0;  // Frobenius norm of the rank-2 reconstruction error
  int iterations = 0;
};

// Mean-centers the rows, then finds the top two right singular vectors by
// orthogonal iteration on the Gram matrix with a Rayleigh-Ritz step, stopping
// once the subspace moves less than 1e-10 or after 10000 iterations. Each
// axis is signed so that its largest-magnitude entry is positive. Throws
// Error(kInvalidArgument) when the matrix is smaller than 2 x 2.
EmbeddingProjection SvdTop2(const Matrix &m);

// Coarse character category used to color embedding plots: "upper",
// "lower", "digit", "underscore" or "other".
std::string_view CharCategory(char32_t ch);

struct CharPoint {
  char32_t ch = 0;
  double x = 0.0;
  double y = 0.0;
};

// Projects the embedding rows of the known characters (the unknown-character
// row is left out).
std::vector<CharPoint> ProjectEmbeddings(const ModelCheckpoint &chk,
                                         EmbeddingProjection *projection = nullptr);

}  // namespace hashseg

#endif  // HASHSEG_EVAL_VIZ_H_
