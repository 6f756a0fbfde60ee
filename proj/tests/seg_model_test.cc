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
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "hashseg/error.h"
#include "hashseg/formats.h"
#include "hashseg/rng.h"
#include "hashseg/seg_model.h"
#include "hashseg/synth_gen.h"
#include "test_util.h"

namespace hashseg {
namespace {

using testing::RandomModel;
using testing::RelError;
using testing::TempDir;
using testing::ThrownKind;
using testing::U;
using testing::Words;

double Sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Element-by-element reference for the whole network.
std::vector<LabelProbs> ScalarForward(const ModelCheckpoint &chk,
                                      std::u32string_view s) {
  const ModelParams &p = chk.params;
  const size_t n = s.size();
  const size_t d = chk.config.embed_dim;
  const size_t hd = chk.config.hidden_dim;
  auto step = [&](const LstmParams &lp, int id, std::vector<double> &h,
                  std::vector<double> &c) {
    std::vector<double> nh(hd), nc(hd);
    for (size_t k = 0; k < hd; ++k) {
      double z[4];
      for (size_t g = 0; g < 4; ++g) {
        double acc = lp.bias[g * hd + k];
        for (size_t j = 0; j < d; ++j) {
          acc += lp.input_weights(g * hd + k, j) * p.embedding(id, j);
        }
        for (size_t j = 0; j < hd; ++j) {
          acc += lp.recurrent_weights(g * hd + k, j) * h[j];
        }
        z[g] = acc;
      }
      nc[k] = Sig(z[1]) * c[k] + Sig(z[0]) * std::tanh(z[2]);
      nh[k] = Sig(z[3]) * std::tanh(nc[k]);
    }
    h = nh;
    c = nc;
  };
  std::vector<std::vector<double>> hf(n), hb(n);
  std::vector<double> h(hd, 0.0), c(hd, 0.0);
  for (size_t t = 0; t < n; ++t) {
    step(p.forward, chk.vocab.Lookup(s[t]), h, c);
    hf[t] = h;
  }
  h.assign(hd, 0.0);
  c.assign(hd, 0.0);
  for (size_t t = n; t-- > 0;) {
    step(p.backward, chk.vocab.Lookup(s[t]), h, c);
    hb[t] = h;
  }
  std::vector<LabelProbs> out(n);
  for (size_t t = 0; t < n; ++t) {
    std::vector<double> m;
    if (chk.config.merge == MergeMode::kConcat) {
      m = hf[t];
      m.insert(m.end(), hb[t].begin(), hb[t].end());
    } else {
      for (size_t k = 0; k < hd; ++k) m.push_back(hf[t][k] + hb[t][k]);
    }
    double y[2];
    for (size_t r = 0; r < 2; ++r) {
      y[r] = p.dense_bias[r];
      for (size_t k = 0; k < m.size(); ++k) y[r] += p.dense_weights(r, k) * m[k];
    }
    double e0 = std::exp(y[0]), e1 = std::exp(y[1]);
    out[t] = {e0 / (e0 + e1), e1 / (e0 + e1)};
  }
  return out;
}

// Swaps the directional LSTMs and reorders the dense columns to match.
ModelCheckpoint Mirror(const ModelCheckpoint &chk) {
  ModelCheckpoint m = chk;
  std::swap(m.params.forward, m.params.backward);
  if (chk.config.merge == MergeMode::kConcat) {
    const size_t h = chk.config.hidden_dim;
    for (size_t r = 0; r < 2; ++r) {
      for (size_t k = 0; k < h; ++k) {
        m.params.dense_weights(r, k) = chk.params.dense_weights(r, h + k);
        m.params.dense_weights(r, h + k) = chk.params.dense_weights(r, k);
      }
    }
  }
  return m;
}

// Central-difference check over every coordinate; returns the worst
// relative error per tensor.
std::vector<double> GradientErrors(ModelCheckpoint chk,
                                   std::u32string_view chars,
                                   const Labels &labels) {
  ModelParams grads(chk.vocab.size(), chk.config);
  grads.Fill(0.0);
  LossAndGradients(chk, chars, labels, &grads);
  auto params = chk.params.Tensors();
  auto analytic = grads.Tensors();
  const double h = 1e-5;
  std::vector<double> worst;
  for (size_t t = 0; t < params.size(); ++t) {
    double w = 0.0;
    for (size_t k = 0; k < params[t].size(); ++k) {
      double keep = params[t][k];
      params[t][k] = keep + h;
      double up = LossAndGradients(chk, chars, labels, nullptr);
      params[t][k] = keep - h;
      double down = LossAndGradients(chk, chars, labels, nullptr);
      params[t][k] = keep;
      w = std::max(w, RelError(analytic[t][k], (up - down) / (2 * h)));
    }
    worst.push_back(w);
  }
  return worst;
}

std::vector<LabeledHashtag> SmallDataset(size_t count, std::uint64_t seed) {
  std::vector<NGramCount> ngrams = {
      {"photo of day", 9}, {"new york", 7}, {"white whale", 5}, {"sea", 4},
      {"captain ahab", 3}, {"ship", 3},     {"old man", 2},     {"ocean", 2}};
  return GenerateDataset(ngrams, BuiltinCatalog(), count, seed);
}

TEST_CASE("vocab") {
  Vocab v(std::vector<char32_t>{U'c', U'a', U'b', U'a'});
  CHECK(v.size() == 4);
  CHECK(v.Lookup(U'a') == 1);
  CHECK(v.Lookup(U'b') == 2);
  CHECK(v.Lookup(U'c') == 3);
  CHECK(v.Lookup(U'z') == Vocab::kUnkId);
  auto data = SmallDataset(50, 1);
  Vocab built = Vocab::Build(data);
  for (const auto &item : data) {
    for (char32_t ch : item.chars) CHECK(built.Lookup(ch) != Vocab::kUnkId);
  }
  CHECK(std::is_sorted(built.chars().begin(), built.chars().end()));
}

TEST_CASE("init checkpoint shapes") {
  Rng rng(1);
  ModelConfig config;
  auto chk = InitCheckpoint(Vocab(std::vector<char32_t>{U'a', U'b'}), config,
                            rng);
  CHECK(chk.params.embedding.rows() == 3);
  CHECK(chk.params.embedding.cols() == 50);
  CHECK(chk.params.forward.hidden_dim() == 64);
  CHECK(chk.params.dense_weights.cols() == 128);
  CHECK(chk.params.dense_bias == Vector{0.0, 0.0});
  config.merge = MergeMode::kSum;
  auto sum = InitCheckpoint(Vocab(std::vector<char32_t>{U'a'}), config, rng);
  CHECK(sum.params.dense_weights.cols() == 64);
  config.hidden_dim = 0;
  CHECK(ThrownKind([&] { InitCheckpoint(Vocab(), config, rng); }) ==
        ErrorKind::kInvalidArgument);
}

TEST_CASE("forward of a zero network is uniform") {
  auto chk = RandomModel(5, 3, 4, MergeMode::kConcat, 1);
  chk.params.Fill(0.0);
  auto probs = Forward(chk, U("abcdz"));
  REQUIRE(probs.size() == 5);
  for (const auto &p : probs) {
    CHECK(p[0] == 0.5);
    CHECK(p[1] == 0.5);
  }
  CHECK(ThrownKind([&] { Forward(chk, U("")); }) ==
        ErrorKind::kInvalidArgument);
}

TEST_CASE("forward matches a scalar trace") {
  for (MergeMode merge : {MergeMode::kConcat, MergeMode::kSum}) {
    auto chk = RandomModel(6, 3, 4, merge, 2);
    for (const char *s : {"a", "abcde", "eeaz"}) {
      auto got = Forward(chk, U(s));
      auto want = ScalarForward(chk, U(s));
      for (size_t t = 0; t < got.size(); ++t) {
        CHECK(std::abs(got[t][0] - want[t][0]) < 1e-12);
        CHECK(std::abs(got[t][1] - want[t][1]) < 1e-12);
      }
    }
  }
}

TEST_CASE("mirrored network on reversed input") {
  for (MergeMode merge : {MergeMode::kConcat, MergeMode::kSum}) {
    auto chk = RandomModel(6, 3, 4, merge, 3);
    auto mirror = Mirror(chk);
    std::u32string s = U("abcdeab");
    std::u32string rev(s.rbegin(), s.rend());
    auto a = Forward(chk, s);
    auto b = Forward(mirror, rev);
    std::reverse(b.begin(), b.end());
    for (size_t t = 0; t < a.size(); ++t) {
      CHECK(std::abs(a[t][0] - b[t][0]) < 1e-12);
    }
  }
}

TEST_CASE("full model gradients match finite differences") {
  for (MergeMode merge : {MergeMode::kConcat, MergeMode::kSum}) {
    auto chk = RandomModel(7, 3, 4, merge, 4);
    Labels labels = {0, 1, 0, 0, 1};
    auto worst = GradientErrors(chk, U("abcfa"), labels);
    REQUIRE(worst.size() == 9);
    for (double w : worst) CHECK(w < 1e-4);
  }
  // Unknown characters route gradients to row 0.
  auto chk = RandomModel(4, 2, 3, MergeMode::kConcat, 5);
  ModelParams g(chk.vocab.size(), chk.config);
  LossAndGradients(chk, U("zz"), Labels{0, 1}, &g);
  CHECK(g.embedding(0, 0) != 0.0);
  CHECK(g.embedding(1, 0) == 0.0);
  CHECK(ThrownKind([&] { LossAndGradients(chk, U("ab"), Labels{1}, &g); }) ==
        ErrorKind::kInvalidArgument);
}

TEST_CASE("loss is the summed cross-entropy") {
  auto chk = RandomModel(5, 3, 4, MergeMode::kConcat, 6);
  Labels labels = {1, 0, 1};
  auto probs = Forward(chk, U("abc"));
  double want = 0.0;
  for (size_t t = 0; t < 3; ++t) want -= std::log(probs[t][labels[t]]);
  CHECK(LossAndGradients(chk, U("abc"), labels, nullptr) ==
        doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("predict") {
  auto zero = RandomModel(5, 3, 4, MergeMode::kConcat, 7);
  zero.params.Fill(0.0);
  auto pred = Predict(zero, U("abcd"));
  CHECK(pred.labels == Labels{0, 0, 0, 1});
  CHECK(pred.mnlp == doctest::Approx(std::log(0.5)).epsilon(1e-12));

  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    auto chk = RandomModel(5, 3, 4, MergeMode::kConcat, 100 + trial, 2.0);
    std::u32string s;
    size_t len = 1 + rng.Below(12);
    // Includes characters outside the vocabulary.
    for (size_t i = 0; i < len; ++i) s += static_cast<char32_t>(U'a' + rng.Below(8));
    auto p = Predict(chk, s);
    REQUIRE(p.labels.size() == s.size());
    CHECK(p.labels.back() == 1);
    for (size_t t = 0; t < s.size(); ++t) {
      CHECK(std::abs(p.probs[t][0] + p.probs[t][1] - 1.0) < 1e-9);
      if (t + 1 < s.size()) {
        CHECK(p.labels[t] == (p.probs[t][1] > p.probs[t][0] ? 1 : 0));
      }
    }
    CHECK(p.mnlp <= 0.0);
    CHECK(p.mnlp == Mnlp(p.probs));
  }
}

TEST_CASE("mnlp") {
  std::vector<LabelProbs> certain = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}};
  CHECK(Mnlp(certain) == 0.0);
  std::vector<LabelProbs> flat(4, LabelProbs{0.5, 0.5});
  CHECK(Mnlp(flat) == doctest::Approx(-0.693147).epsilon(1e-6));
  std::vector<LabelProbs> unsure = {{1.0, 0.0}, {0.7, 0.3}};
  CHECK(Mnlp(unsure) < 0.0);
}

TEST_CASE("mnlp equals the best label sequence") {
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = 1 + rng.Below(10);
    std::vector<LabelProbs> probs(n);
    for (auto &p : probs) {
      p[0] = rng.Uniform();
      p[1] = 1.0 - p[0];
    }
    double best = -INFINITY;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      double s = 0.0;
      for (size_t t = 0; t < n; ++t) s += std::log(probs[t][mask >> t & 1]);
      best = std::max(best, s);
    }
    CHECK(Mnlp(probs) == doctest::Approx(best / n).epsilon(1e-12));
  }
}

TEST_CASE("train") {
  CHECK(ThrownKind([] { Train({}, TrainConfig{}); }) ==
        ErrorKind::kInvalidArgument);

  auto data = SmallDataset(40, 2);
  TrainConfig config;
  config.epochs = 0;
  config.seed = 5;
  auto untrained = Train(data, config);
  Rng rng(5);
  CHECK(untrained == InitCheckpoint(Vocab::Build(data), config.model, rng));

  config.epochs = 2;
  std::vector<double> losses_a, losses_b;
  auto a = Train(data, config, &losses_a);
  auto b = Train(data, config, &losses_b);
  CHECK(SerializeCheckpoint(a) == SerializeCheckpoint(b));
  CHECK(losses_a == losses_b);
  REQUIRE(losses_a.size() == 2);
  MESSAGE("epoch losses " << losses_a[0] << " " << losses_a[1]);
  config.seed = 6;
  CHECK(SerializeCheckpoint(Train(data, config)) != SerializeCheckpoint(a));
}

TEST_CASE("a single hashtag is memorized") {
  auto item = LabelsFromSegmentation(Words({"photo", "of", "the", "day"}));
  TrainConfig config;
  config.epochs = 200;
  config.seed = 1;
  auto chk = Train(std::vector{item}, config);
  CHECK(Predict(chk, item.chars).labels == item.labels);
}

TEST_CASE("checkpoint round trip") {
  for (MergeMode merge : {MergeMode::kConcat, MergeMode::kSum}) {
    auto chk = RandomModel(9, 5, 3, merge, 10);
    chk.vocab = Vocab(std::vector<char32_t>{U'a', U'é', U'ж', U'_', U'9',
                                            0x1F600, U'Z', U'q'});
    std::string bytes = SerializeCheckpoint(chk);
    CHECK(bytes.substr(0, 4) == "HSEG");
    CHECK(bytes[4] == 1);
    auto back = DeserializeCheckpoint(bytes);
    CHECK(back == chk);
    CHECK(SerializeCheckpoint(back) == bytes);

    TempDir dir("ckpt");
    SaveCheckpoint(chk, dir.File("m.bin"));
    CHECK(LoadCheckpoint(dir.File("m.bin")) == chk);
    CHECK(ReadTextFile(dir.File("m.bin")) == bytes);
  }
}

TEST_CASE("checkpoint corruption is detected") {
  auto chk = RandomModel(5, 3, 2, MergeMode::kConcat, 11);
  std::string bytes = SerializeCheckpoint(chk);

  CHECK(ThrownKind([&] {
          DeserializeCheckpoint(bytes.substr(0, bytes.size() - 9));
        }) == ErrorKind::kCorruptCheckpoint);
  CHECK(ThrownKind([&] { DeserializeCheckpoint(bytes.substr(0, 3)); }) ==
        ErrorKind::kCorruptCheckpoint);

  std::string version = bytes;
  version[4] = 2;
  CHECK(ThrownKind([&] { DeserializeCheckpoint(version); }) ==
        ErrorKind::kVersionMismatch);

  std::string magic = bytes;
  magic[0] = 'X';
  CHECK(ThrownKind([&] { DeserializeCheckpoint(magic); }) ==
        ErrorKind::kCorruptCheckpoint);

  std::string flipped = bytes;
  flipped[bytes.size() - 20] ^= 0x40;
  CHECK(ThrownKind([&] { DeserializeCheckpoint(flipped); }) ==
        ErrorKind::kCorruptCheckpoint);

  // A wrong hidden size no longer agrees with the parameter count.
  std::string shape = bytes;
  shape[16] = 3;
  CHECK(ThrownKind([&] { DeserializeCheckpoint(shape); }) ==
        ErrorKind::kShapeMismatch);

  CHECK(ThrownKind([&] { DeserializeCheckpoint(bytes + "x"); }) ==
        ErrorKind::kCorruptCheckpoint);
  CHECK(ThrownKind([] { LoadCheckpoint("/nonexistent/model.bin"); }) ==
        ErrorKind::kIo);
}

}  // namespace
}  // namespace hashseg
