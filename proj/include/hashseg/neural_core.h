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
#ifndef HASHSEG_NEURAL_CORE_H_
#define HASHSEG_NEURAL_CORE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "hashseg/rng.h"

namespace hashseg {

using Vector = std::vector<double>;

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t size() const { return data_.size(); }

  double &operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> Row(size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> Row(size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> Data() { return data_; }
  std::span<const double> Data() const { return data_; }

  void Fill(double value);
  // Uniform(-range, range) entries.
  void FillUniform(double range, Rng &rng);

  bool operator==(const Matrix &) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

// y += M x
void MatVecAdd(const Matrix &m, std::span<const double> x, std::span<double> y);
// y += M^T x
void MatTVecAdd(const Matrix &m, std::span<const double> x,
                std::span<double> y);
// M += a b^T
void OuterAdd(std::span<const double> a, std::span<const double> b, Matrix *m);

double Sigmoid(double x);

// sqrt(6 / (fan_in + fan_out)).
double GlorotRange(size_t fan_in, size_t fan_out);

// Gate blocks are stacked in the order input, forget, cell candidate, output.
enum LstmGate { kInputGate = 0, kForgetGate = 1, kCellGate = 2, kOutputGate = 3 };

struct LstmParams {
  LstmParams() = default;
  LstmParams(size_t input_dim, size_t hidden_dim);

  size_t input_dim() const { return input_weights.cols(); }
  size_t hidden_dim() const { return recurrent_weights.cols(); }

  // Glorot-uniform weights, zero biases except the forget gate at 1.
  void Initialize(Rng &rng);
  void Fill(double value);

  std::vector<std::span<double>> Tensors();

  bool operator==(const LstmParams &) const = default;

  Matrix input_weights;      // 4h x d_in  (W_i; W_f; W_c; W_o)
  Matrix recurrent_weights;  // 4h x h     (U_i; U_f; U_c; U_o)
  Vector bias;               // 4h
};

// Activations of one step, kept for the backward pass.
struct LstmCache {
  Vector x, h_prev, c_prev;
  Vector input, forget, candidate, output;
  Vector c, tanh_c;
};

struct LstmStepResult {
  Vector h;
  Vector c;
  LstmCache cache;
};

// i = s(W_i x + U_i h + b_i), f = s(...), o = s(...), g = tanh(...),
// c = f * c_prev + i * g, h = o * tanh(c).
// Throws Error(kShapeMismatch) when x, h_prev or c_prev have the wrong size.
LstmStepResult LstmStep(const LstmParams &params, std::span<const double> x,
                        std::span<const double> h_prev,
                        std::span<const double> c_prev);

struct LstmStepGrads {
  Vector dx, dh_prev, dc_prev;
};

// Backpropagates dL/dh and dL/dc of one step. Parameter gradients are added
// into *grads, which must have the same shapes as params.
LstmStepGrads LstmBackward(const LstmParams &params, const LstmCache &cache,
                           std::span<const double> dh,
                           std::span<const double> dc, LstmParams *grads);

// Max-shifted softmax.
Vector Softmax(std::span<const double> logits);

struct XentResult {
  double loss = 0.0;
  Vector d_logits;
};

// loss = -log softmax(logits)[target]; d_logits = softmax - onehot(target).
// Throws Error(kInvalidArgument) for an out-of-range target.
XentResult SoftmaxXent(std::span<const double> logits, size_t target);

double GlobalNorm(std::span<const std::span<double>> tensors);

// Rescales the gradient to clip_norm when its global norm exceeds it, then
// takes p -= lr * g. A non-positive or infinite clip_norm disables clipping.
void SgdUpdate(std::span<const std::span<double>> params,
               std::span<const std::span<double>> grads, double learning_rate,
               double clip_norm);

}  // namespace hashseg

#endif  // HASHSEG_NEURAL_CORE_H_
