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
#include "hashseg/eval_viz.h"

#include <cmath>
#include <optional>

#include "hashseg/error.h"
#include "hashseg/unicode.h"

namespace hashseg {

namespace {

std::optional<Labels> CanonicalLabels(const std::u32string &chars,
                                      const std::vector<std::u32string> &words) {
  try {
    return AlignSegmentation(chars, words);
  } catch (const Error &) {
    return std::nullopt;
  }
}

}  // namespace

EvalReport EvaluateSegmentations(
    std::span<const LabeledHashtag> test,
    std::span<const std::vector<std::u32string>> predicted) {
  if (test.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "test set is empty");
  }
  if (test.size() != predicted.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "prediction count differs from test set size");
  }
  EvalReport report;
  for (size_t i = 0; i < test.size(); ++i) {
    const LabeledHashtag &item = test[i];
    std::optional<Labels> labels = CanonicalLabels(item.chars, predicted[i]);
    const bool correct = labels.has_value() && *labels == item.labels;
    ++report.total;
    if (correct) ++report.correct;
    if (item.type_id >= 0) {
      TypeStats &ts = report.per_type[item.type_id];
      ++ts.total;
      if (correct) ++ts.correct;
    }
    if (!correct && report.error_samples.size() < EvalReport::kMaxErrorSamples) {
      report.error_samples.push_back({item.chars, item.gold, predicted[i]});
    }
  }
  report.accuracy =
      static_cast<double>(report.correct) / static_cast<double>(report.total);
  for (auto &[type, ts] : report.per_type) {
    ts.accuracy = static_cast<double>(ts.correct) / static_cast<double>(ts.total);
  }
  return report;
}

EvalReport Evaluate(const ModelCheckpoint &chk,
                    std::span<const LabeledHashtag> test) {
  std::vector<std::vector<std::u32string>> predicted;
  predicted.reserve(test.size());
  for (const LabeledHashtag &item : test) {
    Prediction p = Predict(chk, item.chars);
    predicted.push_back(ApplyLabels(item.chars, p.labels));
  }
  return EvaluateSegmentations(test, predicted);
}

EvalReport EvaluateBaseline(const NGramTable &table,
                            std::span<const LabeledHashtag> test,
                            const SegmenterOptions &options) {
  std::vector<std::vector<std::u32string>> predicted;
  predicted.reserve(test.size());
  for (const LabeledHashtag &item : test) {
    bool has_text = false;
    for (char32_t ch : item.chars) has_text |= ch != U'_';
    if (!has_text) {
      predicted.emplace_back();
      continue;
    }
    predicted.push_back(SegmentDp(table, item.chars, options).words);
  }
  return EvaluateSegmentations(test, predicted);
}

namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

// Orthogonalizes v against u (unit) and normalizes it. Returns false when
// nothing is left.
bool OrthonormalizeAgainst(std::span<const double> u, Vector &v,
                           double scale) {
  for (int pass = 0; pass < 2; ++pass) {
    const double proj = Dot(u, v);
    for (size_t i = 0; i < v.size(); ++i) v[i] -= proj * u[i];
  }
  const double n = Norm(v);
  if (!(n > 1e-14 * scale)) return false;
  for (double &x : v) x /= n;
  return true;
}

Vector GramTimes(const Matrix &gram, std::span<const double> v) {
  Vector out(gram.rows(), 0.0);
  MatVecAdd(gram, v, out);
  return out;
}

void CanonicalSign(Vector &v) {
  size_t best = 0;
  for (size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v[best] < 0.0) {
    for (double &x : v) x = -x;
  }
}

}  // namespace

EmbeddingProjection SvdTop2(const Matrix &m) {
  const size_t n = m.rows();
  const size_t d = m.cols();
  if (n < 2 || d < 2) {
    throw Error(ErrorKind::kInvalidArgument,
                "SVD projection needs at least a 2 x 2 matrix");
  }
  Matrix a = m;
  for (size_t c = 0; c < d; ++c) {
    double mean = 0.0;
    for (size_t r = 0; r < n; ++r) mean += a(r, c);
    mean /= static_cast<double>(n);
    for (size_t r = 0; r < n; ++r) a(r, c) -= mean;
  }
  Matrix gram(d, d);
  for (size_t r = 0; r < n; ++r) OuterAdd(a.Row(r), a.Row(r), &gram);
  double total_sq = 0.0;
  for (size_t c = 0; c < d; ++c) total_sq += gram(c, c);

  EmbeddingProjection out;
  out.points.assign(n, {0.0, 0.0});
  Vector v1(d, 0.0), v2(d, 0.0);
  v1[0] = 1.0;
  v2[1] = 1.0;
  if (total_sq == 0.0) {
    out.axes = {v1, v2};
    return out;
  }

  // Deterministic start, spread over all coordinates.
  Rng rng(0x5EEDULL);
  for (size_t i = 0; i < d; ++i) {
    v1[i] = rng.Uniform(-1.0, 1.0);
    v2[i] = rng.Uniform(-1.0, 1.0);
  }
  v1[0] += 1.0;
  const double n1 = Norm(v1);
  for (double &x : v1) x /= n1;
  OrthonormalizeAgainst(v1, v2, 1.0);

  constexpr int kMaxIterations = 10000;
  constexpr double kTolerance = 1e-10;
  const double scale = total_sq;
  int iter = 0;
  for (; iter < kMaxIterations; ++iter) {
    Vector w1 = GramTimes(gram, v1);
    Vector w2 = GramTimes(gram, v2);
    // A start vector orthogonal to the row space maps to zero.
    if (!(Norm(w1) > 1e-14 * scale)) std::swap(w1, w2);
    const double nw1 = Norm(w1);
    if (!(nw1 > 1e-14 * scale)) break;
    for (double &x : w1) x /= nw1;
    if (!OrthonormalizeAgainst(w1, w2, scale)) {
      // Rank one: keep the old second direction, made orthogonal to w1.
      w2 = v2;
      if (!OrthonormalizeAgainst(w1, w2, 1.0)) {
        w2 = v1;
        OrthonormalizeAgainst(w1, w2, 1.0);
      }
    }
    // Rayleigh-Ritz on the 2 x 2 projected Gram matrix.
    Vector gw1 = GramTimes(gram, w1);
    Vector gw2 = GramTimes(gram, w2);
    const double h11 = Dot(w1, gw1);
    const double h12 = Dot(w1, gw2);
    const double h22 = Dot(w2, gw2);
    const double theta = 0.5 * std::atan2(2.0 * h12, h11 - h22);
    const double cs = std::cos(theta);
    const double sn = std::sin(theta);
    Vector r1(d), r2(d);
    for (size_t i = 0; i < d; ++i) {
      r1[i] = cs * w1[i] + sn * w2[i];
      r2[i] = -sn * w1[i] + cs * w2[i];
    }
    const double l1 = cs * cs * h11 + 2.0 * cs * sn * h12 + sn * sn * h22;
    const double l2 = sn * sn * h11 - 2.0 * cs * sn * h12 + cs * cs * h22;
    if (l2 > l1) std::swap(r1, r2);

    // Distance of the new basis from the old subspace.
    double change_sq = 0.0;
    for (const Vector *r : {&r1, &r2}) {
      const double p1 = Dot(v1, *r);
      const double p2 = Dot(v2, *r);
      for (size_t i = 0; i < d; ++i) {
        const double res = (*r)[i] - p1 * v1[i] - p2 * v2[i];
        change_sq += res * res;
      }
    }
    v1 = std::move(r1);
    v2 = std::move(r2);
    if (std::sqrt(change_sq) < kTolerance) {
      ++iter;
      break;
    }
  }
  out.iterations = iter;
  CanonicalSign(v1);
  CanonicalSign(v2);

  double sq1 = 0.0, sq2 = 0.0, resid_sq = 0.0;
  for (size_t r = 0; r < n; ++r) {
    auto row = a.Row(r);
    const double x = Dot(row, v1);
    const double y = Dot(row, v2);
    out.points[r] = {x, y};
    sq1 += x * x;
    sq2 += y * y;
    for (size_t c = 0; c < d; ++c) {
      const double e = row[c] - x * v1[c] - y * v2[c];
      resid_sq += e * e;
    }
  }
  out.singular_values = {std::sqrt(sq1), std::sqrt(sq2)};
  out.explained_ratio = std::min(1.0, (sq1 + sq2) / total_sq);
  out.residual = std::sqrt(resid_sq);
  out.axes = {std::move(v1), std::move(v2)};
  return out;
}

std::string_view CharCategory(char32_t ch) {
  switch (Classify(ch)) {
    case CharClass::kUpper: return "upper";
    case CharClass::kLower: return "lower";
    case CharClass::kDigit: return "digit";
    case CharClass::kUnderscore: return "underscore";
    default: return "other";
  }
}

std::vector<CharPoint> ProjectEmbeddings(const ModelCheckpoint &chk,
                                         EmbeddingProjection *projection) {
  const auto &chars = chk.vocab.chars();
  const Matrix &emb = chk.params.embedding;
  Matrix known(chars.size(), emb.cols());
  for (size_t i = 0; i < chars.size(); ++i) {
    auto src = emb.Row(i + 1);
    std::copy(src.begin(), src.end(), known.Row(i).begin());
  }
  EmbeddingProjection proj = SvdTop2(known);
  std::vector<CharPoint> out;
  for (size_t i = 0; i < chars.size(); ++i) {
    out.push_back({chars[i], proj.points[i][0], proj.points[i][1]});
  }
  if (projection != nullptr) *projection = std::move(proj);
  return out;
}

}  // namespace hashseg
