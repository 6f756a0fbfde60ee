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
#include "hashseg/seg_model.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hashseg/error.h"
#include "hashseg/unicode.h"

namespace hashseg {

Vocab::Vocab(std::vector<char32_t> chars) : chars_(std::move(chars)) {
  std::sort(chars_.begin(), chars_.end());
  chars_.erase(std::unique(chars_.begin(), chars_.end()), chars_.end());
  for (size_t i = 0; i < chars_.size(); ++i) {
    ids_[chars_[i]] = static_cast<int>(i) + 1;
  }
}

Vocab Vocab::Build(std::span<const LabeledHashtag> dataset) {
  std::vector<char32_t> chars;
  for (const LabeledHashtag &item : dataset) {
    chars.insert(chars.end(), item.chars.begin(), item.chars.end());
  }
  return Vocab(std::move(chars));
}

int Vocab::Lookup(char32_t ch) const {
  auto it = ids_.find(ch);
  return it == ids_.end() ? kUnkId : it->second;
}

ModelParams::ModelParams(size_t vocab_size, const ModelConfig &config)
    : embedding(vocab_size, config.embed_dim),
      forward(config.embed_dim, config.hidden_dim),
      backward(config.embed_dim, config.hidden_dim),
      dense_weights(2, config.MergedDim()),
      dense_bias(2, 0.0) {}

void ModelParams::Fill(double value) {
  embedding.Fill(value);
  forward.Fill(value);
  backward.Fill(value);
  dense_weights.Fill(value);
  std::fill(dense_bias.begin(), dense_bias.end(), value);
}

std::vector<std::span<double>> ModelParams::Tensors() {
  std::vector<std::span<double>> out{embedding.Data()};
  for (auto t : forward.Tensors()) out.push_back(t);
  for (auto t : backward.Tensors()) out.push_back(t);
  out.push_back(dense_weights.Data());
  out.push_back(dense_bias);
  return out;
}

ModelCheckpoint InitCheckpoint(Vocab vocab, const ModelConfig &config,
                               Rng &rng) {
  if (config.embed_dim < 1 || config.hidden_dim < 1) {
    throw Error(ErrorKind::kInvalidArgument, "model dimensions must be >= 1");
  }
  ModelCheckpoint chk;
  chk.config = config;
  chk.vocab = std::move(vocab);
  chk.params = ModelParams(chk.vocab.size(), config);
  ModelParams &p = chk.params;
  p.embedding.FillUniform(
      GlorotRange(p.embedding.rows(), p.embedding.cols()), rng);
  p.forward.Initialize(rng);
  p.backward.Initialize(rng);
  p.dense_weights.FillUniform(GlorotRange(p.dense_weights.cols(), 2), rng);
  return chk;
}

namespace {

struct ForwardTrace {
  std::vector<int> ids;
  std::vector<LstmCache> fwd_cache;
  std::vector<LstmCache> bwd_cache;
  std::vector<Vector> merged;
  std::vector<Vector> logits;
};

ForwardTrace RunForward(const ModelCheckpoint &chk, std::u32string_view chars) {
  if (chars.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "cannot run model on empty input");
  }
  const ModelParams &p = chk.params;
  const size_t n = chars.size();
  const size_t h = static_cast<size_t>(chk.config.hidden_dim);
  ForwardTrace tr;
  tr.ids.resize(n);
  for (size_t t = 0; t < n; ++t) tr.ids[t] = chk.vocab.Lookup(chars[t]);

  tr.fwd_cache.resize(n);
  tr.bwd_cache.resize(n);
  std::vector<Vector> hf(n), hb(n);
  Vector state_h(h, 0.0), state_c(h, 0.0);
  for (size_t t = 0; t < n; ++t) {
    LstmStepResult r = LstmStep(p.forward, p.embedding.Row(tr.ids[t]),
                                state_h, state_c);
    state_h = r.h;
    state_c = std::move(r.c);
    hf[t] = std::move(r.h);
    tr.fwd_cache[t] = std::move(r.cache);
  }
  std::fill(state_h.begin(), state_h.end(), 0.0);
  std::fill(state_c.begin(), state_c.end(), 0.0);
  for (size_t t = n; t-- > 0;) {
    LstmStepResult r = LstmStep(p.backward, p.embedding.Row(tr.ids[t]),
                                state_h, state_c);
    state_h = r.h;
    state_c = std::move(r.c);
    hb[t] = std::move(r.h);
    tr.bwd_cache[t] = std::move(r.cache);
  }

  tr.merged.resize(n);
  tr.logits.resize(n);
  for (size_t t = 0; t < n; ++t) {
    Vector &m = tr.merged[t];
    if (chk.config.merge == MergeMode::kConcat) {
      m = hf[t];
      m.insert(m.end(), hb[t].begin(), hb[t].end());
    } else {
      m.resize(h);
      for (size_t k = 0; k < h; ++k) m[k] = hf[t][k] + hb[t][k];
    }
    tr.logits[t] = p.dense_bias;
    MatVecAdd(p.dense_weights, m, tr.logits[t]);
  }
  return tr;
}

}  // namespace

std::vector<LabelProbs> Forward(const ModelCheckpoint &chk,
                                std::u32string_view chars) {
  ForwardTrace tr = RunForward(chk, chars);
  std::vector<LabelProbs> out(chars.size());
  for (size_t t = 0; t < chars.size(); ++t) {
    Vector p = Softmax(tr.logits[t]);
    out[t] = {p[0], p[1]};
  }
  return out;
}

double LossAndGradients(const ModelCheckpoint &chk, std::u32string_view chars,
                        std::span<const std::uint8_t> labels,
                        ModelParams *grads) {
  if (labels.size() != chars.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "label sequence length differs from input length");
  }
  const ModelParams &p = chk.params;
  ForwardTrace tr = RunForward(chk, chars);
  const size_t n = chars.size();
  const size_t h = static_cast<size_t>(chk.config.hidden_dim);

  double loss = 0.0;
  std::vector<Vector> d_merged(n);
  for (size_t t = 0; t < n; ++t) {
    XentResult x = SoftmaxXent(tr.logits[t], labels[t] ? 1 : 0);
    loss += x.loss;
    if (grads == nullptr) continue;
    OuterAdd(x.d_logits, tr.merged[t], &grads->dense_weights);
    for (size_t k = 0; k < 2; ++k) grads->dense_bias[k] += x.d_logits[k];
    d_merged[t].assign(tr.merged[t].size(), 0.0);
    MatTVecAdd(p.dense_weights, x.d_logits, d_merged[t]);
  }
  if (grads == nullptr) return loss;

  const bool concat = chk.config.merge == MergeMode::kConcat;
  auto directional = [&](size_t t, bool backward_half) {
    std::span<const double> d(d_merged[t]);
    if (!concat) return d;
    return backward_half ? d.subspan(h, h) : d.subspan(0, h);
  };

  Vector dh_next(h, 0.0), dc_next(h, 0.0), dh(h);
  for (size_t t = n; t-- > 0;) {
    auto dm = directional(t, false);
    for (size_t k = 0; k < h; ++k) dh[k] = dm[k] + dh_next[k];
    LstmStepGrads g =
        LstmBackward(p.forward, tr.fwd_cache[t], dh, dc_next, &grads->forward);
    dh_next = std::move(g.dh_prev);
    dc_next = std::move(g.dc_prev);
    auto row = grads->embedding.Row(tr.ids[t]);
    for (size_t k = 0; k < row.size(); ++k) row[k] += g.dx[k];
  }
  std::fill(dh_next.begin(), dh_next.end(), 0.0);
  std::fill(dc_next.begin(), dc_next.end(), 0.0);
  for (size_t t = 0; t < n; ++t) {
    auto dm = directional(t, true);
    for (size_t k = 0; k < h; ++k) dh[k] = dm[k] + dh_next[k];
    LstmStepGrads g = LstmBackward(p.backward, tr.bwd_cache[t], dh, dc_next,
                                   &grads->backward);
    dh_next = std::move(g.dh_prev);
    dc_next = std::move(g.dc_prev);
    auto row = grads->embedding.Row(tr.ids[t]);
    for (size_t k = 0; k < row.size(); ++k) row[k] += g.dx[k];
  }
  return loss;
}

std::vector<double> TrainEpochs(ModelCheckpoint *chk,
                                std::span<const LabeledHashtag> dataset,
                                int epochs, double learning_rate,
                                double clip_norm, Rng &rng) {
  std::vector<double> losses;
  if (dataset.empty() || epochs <= 0) return losses;
  ModelParams grads(chk->vocab.size(), chk->config);
  std::vector<std::span<double>> grad_tensors = grads.Tensors();
  std::vector<std::span<double>> param_tensors = chk->params.Tensors();
  std::vector<size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.Shuffle(std::span(order));
    double total = 0.0;
    for (size_t idx : order) {
      const LabeledHashtag &item = dataset[idx];
      grads.Fill(0.0);
      total += LossAndGradients(*chk, item.chars, item.labels, &grads);
      SgdUpdate(param_tensors, grad_tensors, learning_rate, clip_norm);
    }
    losses.push_back(total / static_cast<double>(dataset.size()));
  }
  return losses;
}

ModelCheckpoint Train(std::span<const LabeledHashtag> dataset,
                      const TrainConfig &config,
                      std::vector<double> *epoch_losses) {
  if (dataset.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "training dataset is empty");
  }
  Rng rng(config.seed);
  ModelCheckpoint chk = InitCheckpoint(Vocab::Build(dataset), config.model, rng);
  std::vector<double> losses =
      TrainEpochs(&chk, dataset, config.epochs, config.learning_rate,
                  config.clip_norm, rng);
  if (epoch_losses != nullptr) *epoch_losses = std::move(losses);
  return chk;
}

double Mnlp(std::span<const LabelProbs> probs) {
  if (probs.empty()) return 0.0;
  double sum = 0.0;
  for (const LabelProbs &p : probs) sum += std::log(std::max(p[0], p[1]));
  return sum / static_cast<double>(probs.size());
}

Prediction Predict(const ModelCheckpoint &chk, std::u32string_view chars) {
  Prediction out;
  out.probs = Forward(chk, chars);
  out.labels.resize(chars.size());
  for (size_t t = 0; t < chars.size(); ++t) {
    out.labels[t] = out.probs[t][1] > out.probs[t][0] ? 1 : 0;
  }
  out.labels.back() = 1;
  out.mnlp = Mnlp(out.probs);
  return out;
}

namespace {

constexpr char kMagic[4] = {'H', 'S', 'E', 'G'};

std::uint64_t Fnv1a(std::string_view bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

class ByteWriter {
 public:
  void U8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void U32(std::uint32_t v) {
    for (int k = 0; k < 4; ++k) U8(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  void U64(std::uint64_t v) {
    for (int k = 0; k < 8; ++k) U8(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  void F64(double v) { U64(std::bit_cast<std::uint64_t>(v)); }
  void Bytes(std::string_view s) { buf_.append(s); }
  std::string &buffer() { return buf_; }

 private:
  std::string buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  std::uint8_t U8() {
    Need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint32_t U32() {
    Need(4);
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_++]))
           << (8 * k);
    }
    return v;
  }
  std::uint64_t U64() {
    Need(8);
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_++]))
           << (8 * k);
    }
    return v;
  }
  double F64() { return std::bit_cast<double>(U64()); }
  std::string_view Bytes(size_t n) {
    Need(n);
    std::string_view out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  size_t position() const { return pos_; }
  size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void Need(size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw Error(ErrorKind::kCorruptCheckpoint, "checkpoint is truncated");
    }
  }

  std::string_view bytes_;
  size_t pos_ = 0;
};

}  // namespace

std::string SerializeCheckpoint(const ModelCheckpoint &chk) {
  ByteWriter w;
  w.Bytes(std::string_view(kMagic, 4));
  w.U32(chk.format_version);
  w.U32(static_cast<std::uint32_t>(chk.config.merge));
  w.U32(static_cast<std::uint32_t>(chk.config.embed_dim));
  w.U32(static_cast<std::uint32_t>(chk.config.hidden_dim));
  w.U32(static_cast<std::uint32_t>(chk.vocab.chars().size()));
  for (char32_t ch : chk.vocab.chars()) {
    std::string utf8 = EncodeUtf8(ch);
    w.U8(static_cast<std::uint8_t>(utf8.size()));
    w.Bytes(utf8);
  }
  ModelParams params = chk.params;
  std::vector<std::span<double>> tensors = params.Tensors();
  std::uint64_t count = 0;
  for (auto t : tensors) count += t.size();
  w.U64(count);
  for (auto t : tensors) {
    for (double v : t) w.F64(v);
  }
  w.U64(Fnv1a(w.buffer()));
  return std::move(w.buffer());
}

ModelCheckpoint DeserializeCheckpoint(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.Bytes(4) != std::string_view(kMagic, 4)) {
    throw Error(ErrorKind::kCorruptCheckpoint, "not a checkpoint (bad magic)");
  }
  ModelCheckpoint chk;
  chk.format_version = r.U32();
  if (chk.format_version != ModelCheckpoint::kFormatVersion) {
    throw Error(ErrorKind::kVersionMismatch,
                "unsupported checkpoint format version " +
                    std::to_string(chk.format_version));
  }
  std::uint32_t merge = r.U32();
  if (merge > 1) {
    throw Error(ErrorKind::kCorruptCheckpoint, "unknown merge mode");
  }
  chk.config.merge = static_cast<MergeMode>(merge);
  std::uint32_t embed_dim = r.U32();
  std::uint32_t hidden_dim = r.U32();
  if (embed_dim == 0 || hidden_dim == 0 || embed_dim > (1u << 16) ||
      hidden_dim > (1u << 16)) {
    throw Error(ErrorKind::kShapeMismatch, "invalid model dimensions");
  }
  chk.config.embed_dim = static_cast<int>(embed_dim);
  chk.config.hidden_dim = static_cast<int>(hidden_dim);
  std::uint32_t n_chars = r.U32();
  if (n_chars > r.remaining()) {
    throw Error(ErrorKind::kCorruptCheckpoint, "checkpoint is truncated");
  }
  std::vector<char32_t> chars;
  chars.reserve(n_chars);
  for (std::uint32_t i = 0; i < n_chars; ++i) {
    std::uint8_t len = r.U8();
    std::u32string decoded = DecodeUtf8(r.Bytes(len));
    if (decoded.size() != 1) {
      throw Error(ErrorKind::kCorruptCheckpoint, "bad vocabulary entry");
    }
    if (!chars.empty() && decoded[0] <= chars.back()) {
      throw Error(ErrorKind::kCorruptCheckpoint, "vocabulary not sorted");
    }
    chars.push_back(decoded[0]);
  }
  chk.vocab = Vocab(std::move(chars));
  chk.params = ModelParams(chk.vocab.size(), chk.config);
  std::vector<std::span<double>> tensors = chk.params.Tensors();
  std::uint64_t expected = 0;
  for (auto t : tensors) expected += t.size();
  std::uint64_t count = r.U64();
  if (count != expected) {
    throw Error(ErrorKind::kShapeMismatch,
                "parameter count " + std::to_string(count) +
                    " does not match dimensions (expected " +
                    std::to_string(expected) + ")");
  }
  for (auto t : tensors) {
    for (double &v : t) v = r.F64();
  }
  const size_t body_end = r.position();
  const std::uint64_t checksum = r.U64();
  if (checksum != Fnv1a(bytes.substr(0, body_end))) {
    throw Error(ErrorKind::kCorruptCheckpoint, "checkpoint checksum mismatch");
  }
  if (r.remaining() != 0) {
    throw Error(ErrorKind::kCorruptCheckpoint, "trailing bytes in checkpoint");
  }
  return chk;
}

void SaveCheckpoint(const ModelCheckpoint &chk, const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  std::string bytes = SerializeCheckpoint(chk);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path);
}

ModelCheckpoint LoadCheckpoint(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return DeserializeCheckpoint(ss.str());
}

}  // namespace hashseg
