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
#include "hashseg/neural_core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "hashseg/error.h"

namespace hashseg {

void Matrix::Fill(double value) { std::fill(data_.begin(), data_.end(), value); }

void Matrix::FillUniform(double range, Rng &rng) {
  for (double &v : data_) v = rng.Uniform(-range, range);
}

void MatVecAdd(const Matrix &m, std::span<const double> x,
               std::span<double> y) {
  const size_t cols = m.cols();
  const double *row = m.Data().data();
  for (size_t r = 0; r < m.rows(); ++r, row += cols) {
    double acc = 0.0;
    for (size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    y[r] += acc;
  }
}

void MatTVecAdd(const Matrix &m, std::span<const double> x,
                std::span<double> y) {
  const size_t cols = m.cols();
  const double *row = m.Data().data();
  double *out = y.data();
  for (size_t r = 0; r < m.rows(); ++r, row += cols) {
    const double xr = x[r];
    if (xr == 0.0) continue;
    for (size_t c = 0; c < cols; ++c) out[c] += row[c] * xr;
  }
}

void OuterAdd(std::span<const double> a, std::span<const double> b,
              Matrix *m) {
  const size_t cols = m->cols();
  double *row = m->Data().data();
  const double *bp = b.data();
  for (size_t r = 0; r < m->rows(); ++r, row += cols) {
    const double ar = a[r];
    if (ar == 0.0) continue;
    for (size_t c = 0; c < cols; ++c) row[c] += ar * bp[c];
  }
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double GlorotRange(size_t fan_in, size_t fan_out) {
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

LstmParams::LstmParams(size_t input_dim, size_t hidden_dim)
    : input_weights(4 * hidden_dim, input_dim),
      recurrent_weights(4 * hidden_dim, hidden_dim),
      bias(4 * hidden_dim, 0.0) {}

void LstmParams::Initialize(Rng &rng) {
  const size_t h = hidden_dim();
  input_weights.FillUniform(GlorotRange(input_dim(), 4 * h), rng);
  recurrent_weights.FillUniform(GlorotRange(h, 4 * h), rng);
  std::fill(bias.begin(), bias.end(), 0.0);
  std::fill(bias.begin() + kForgetGate * h, bias.begin() + (kForgetGate + 1) * h,
            1.0);
}

void LstmParams::Fill(double value) {
  input_weights.Fill(value);
  recurrent_weights.Fill(value);
  std::fill(bias.begin(), bias.end(), value);
}

std::vector<std::span<double>> LstmParams::Tensors() {
  return {input_weights.Data(), recurrent_weights.Data(), std::span(bias)};
}

LstmStepResult LstmStep(const LstmParams &params, std::span<const double> x,
                        std::span<const double> h_prev,
                        std::span<const double> c_prev) {
  const size_t h = params.hidden_dim();
  if (x.size() != params.input_dim() || h_prev.size() != h ||
      c_prev.size() != h) {
    throw Error(ErrorKind::kShapeMismatch,
                "lstm step input sizes do not match parameters");
  }
  Vector z(params.bias);
  MatVecAdd(params.input_weights, x, z);
  MatVecAdd(params.recurrent_weights, h_prev, z);

  LstmStepResult out;
  LstmCache &cache = out.cache;
  cache.x.assign(x.begin(), x.end());
  cache.h_prev.assign(h_prev.begin(), h_prev.end());
  cache.c_prev.assign(c_prev.begin(), c_prev.end());
  cache.input.resize(h);
  cache.forget.resize(h);
  cache.candidate.resize(h);
  cache.output.resize(h);
  cache.c.resize(h);
  cache.tanh_c.resize(h);
  out.h.resize(h);
  for (size_t k = 0; k < h; ++k) {
    const double i = Sigmoid(z[kInputGate * h + k]);
    const double f = Sigmoid(z[kForgetGate * h + k]);
    const double g = std::tanh(z[kCellGate * h + k]);
    const double o = Sigmoid(z[kOutputGate * h + k]);
    const double c = f * c_prev[k] + i * g;
    const double tc = std::tanh(c);
    cache.input[k] = i;
    cache.forget[k] = f;
    cache.candidate[k] = g;
    cache.output[k] = o;
    cache.c[k] = c;
    cache.tanh_c[k] = tc;
    out.h[k] = o * tc;
  }
  out.c = cache.c;
  return out;
}

LstmStepGrads LstmBackward(const LstmParams &params, const LstmCache &cache,
                           std::span<const double> dh,
                           std::span<const double> dc, LstmParams *grads) {
  const size_t h = params.hidden_dim();
  if (dh.size() != h || dc.size() != h) {
    throw Error(ErrorKind::kShapeMismatch,
                "lstm backward gradient sizes do not match parameters");
  }
  Vector dz(4 * h);
  LstmStepGrads out;
  out.dc_prev.resize(h);
  for (size_t k = 0; k < h; ++k) {
    const double i = cache.input[k];
    const double f = cache.forget[k];
    const double g = cache.candidate[k];
    const double o = cache.output[k];
    const double tc = cache.tanh_c[k];
    const double d_o = dh[k] * tc;
    const double d_c = dc[k] + dh[k] * o * (1.0 - tc * tc);
    dz[kInputGate * h + k] = d_c * g * i * (1.0 - i);
    dz[kForgetGate * h + k] = d_c * cache.c_prev[k] * f * (1.0 - f);
    dz[kCellGate * h + k] = d_c * i * (1.0 - g * g);
    dz[kOutputGate * h + k] = d_o * o * (1.0 - o);
    out.dc_prev[k] = d_c * f;
  }
  OuterAdd(dz, cache.x, &grads->input_weights);
  OuterAdd(dz, cache.h_prev, &grads->recurrent_weights);
  for (size_t k = 0; k < 4 * h; ++k) grads->bias[k] += dz[k];
  out.dx.assign(params.input_dim(), 0.0);
  out.dh_prev.assign(h, 0.0);
  MatTVecAdd(params.input_weights, dz, out.dx);
  MatTVecAdd(params.recurrent_weights, dz, out.dh_prev);
  return out;
}

Vector Softmax(std::span<const double> logits) {
  Vector out(logits.size());
  if (logits.empty()) return out;
  const double mx = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (size_t k = 0; k < logits.size(); ++k) {
    out[k] = std::exp(logits[k] - mx);
    sum += out[k];
  }
  for (double &v : out) v /= sum;
  return out;
}

XentResult SoftmaxXent(std::span<const double> logits, size_t target) {
  if (target >= logits.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "target label " + std::to_string(target) + " out of range");
  }
  const size_t arg_max =
      std::max_element(logits.begin(), logits.end()) - logits.begin();
  const double mx = logits[arg_max];
  // log-sum-exp as mx + log1p(rest) keeps tiny losses accurate.
  double rest = 0.0;
  for (size_t k = 0; k < logits.size(); ++k) {
    if (k != arg_max) rest += std::exp(logits[k] - mx);
  }
  const double log1p_rest = std::log1p(rest);
  const double log_z = mx + log1p_rest;
  XentResult out;
  out.loss = (mx - logits[target]) + log1p_rest;
  out.d_logits.resize(logits.size());
  for (size_t k = 0; k < logits.size(); ++k) {
    out.d_logits[k] = std::exp(logits[k] - log_z);
  }
  out.d_logits[target] -= 1.0;
  return out;
}

double GlobalNorm(std::span<const std::span<double>> tensors) {
  double sq = 0.0;
  for (std::span<double> t : tensors) {
    for (double v : t) sq += v * v;
  }
  return std::sqrt(sq);
}

void SgdUpdate(std::span<const std::span<double>> params,
               std::span<const std::span<double>> grads, double learning_rate,
               double clip_norm) {
  if (params.size() != grads.size()) {
    throw Error(ErrorKind::kShapeMismatch,
                "parameter and gradient tensor counts differ");
  }
  for (size_t t = 0; t < params.size(); ++t) {
    if (params[t].size() != grads[t].size()) {
      throw Error(ErrorKind::kShapeMismatch,
                  "parameter and gradient tensor shapes differ");
    }
  }
  double scale = 1.0;
  if (clip_norm > 0.0 && std::isfinite(clip_norm)) {
    const double norm = GlobalNorm(grads);
    if (norm > clip_norm) scale = clip_norm / norm;
  }
  const double step = learning_rate * scale;
  for (size_t t = 0; t < params.size(); ++t) {
    double *p = params[t].data();
    const double *g = grads[t].data();
    for (size_t k = 0; k < params[t].size(); ++k) p[k] -= step * g[k];
  }
}

}  // namespace hashseg
