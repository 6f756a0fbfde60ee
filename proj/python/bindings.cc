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
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "hashseg/active_learning.h"
#include "hashseg/error.h"
#include "hashseg/eval_viz.h"
#include "hashseg/formats.h"
#include "hashseg/lm_baseline.h"
#include "hashseg/seg_model.h"
#include "hashseg/synth_gen.h"
#include "hashseg/text_corpus.h"
#include "hashseg/unicode.h"

namespace py = pybind11;

namespace hashseg {
namespace {

MergeMode ParseMerge(const std::string &name) {
  if (name == "concat") return MergeMode::kConcat;
  if (name == "sum") return MergeMode::kSum;
  throw Error(ErrorKind::kInvalidArgument, "merge must be concat or sum");
}

ScoringMode ParseScoring(const std::string &name) {
  if (name == "bigram") return ScoringMode::kBigramBackoff;
  if (name == "unigram") return ScoringMode::kUnigram;
  throw Error(ErrorKind::kInvalidArgument, "scoring must be bigram or unigram");
}

RetrainMode ParseRetrain(const std::string &name) {
  if (name == "continue") return RetrainMode::kContinue;
  if (name == "scratch") return RetrainMode::kFromScratch;
  throw Error(ErrorKind::kInvalidArgument,
              "retrain_mode must be continue or scratch");
}

ModelConfig MakeModelConfig(int embed_dim, int hidden_dim,
                            const std::string &merge) {
  return {embed_dim, hidden_dim, ParseMerge(merge)};
}

py::dict ReportDict(const EvalReport &r) {
  py::dict per_type;
  for (const auto &[type, ts] : r.per_type) {
    per_type[py::int_(type)] = py::dict(
        py::arg("total") = ts.total, py::arg("correct") = ts.correct,
        py::arg("accuracy") = ts.accuracy);
  }
  py::list errors;
  for (const ErrorSample &e : r.error_samples) {
    errors.append(py::dict(py::arg("hashtag") = e.hashtag,
                           py::arg("gold") = e.gold,
                           py::arg("predicted") = e.predicted));
  }
  return py::dict(py::arg("total") = r.total, py::arg("correct") = r.correct,
                  py::arg("accuracy") = r.accuracy,
                  py::arg("per_type") = per_type,
                  py::arg("error_samples") = errors);
}

std::vector<NGramCount> ToNGrams(
    const std::vector<std::pair<std::string, std::uint64_t>> &pairs) {
  std::vector<NGramCount> out;
  for (const auto &[ngram, freq] : pairs) out.push_back({ngram, freq});
  return out;
}

std::vector<std::pair<std::string, std::uint64_t>> FromNGrams(
    const std::vector<NGramCount> &ngrams) {
  std::vector<std::pair<std::string, std::uint64_t>> out;
  for (const auto &ng : ngrams) out.emplace_back(ng.ngram, ng.frequency);
  return out;
}

}  // namespace
}  // namespace hashseg

PYBIND11_MODULE(_hashseg, m) {
  using namespace hashseg;
  m.doc() = "Hashtag segmentation toolkit";

  static py::exception<Error> error_type(m, "HashsegError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error &e) {
      py::object cls = py::reinterpret_borrow<py::object>(error_type.ptr());
      py::object err = cls(
          py::str(std::string(ErrorKindName(e.kind())) + ": " + e.what()));
      err.attr("kind") = py::str(std::string(ErrorKindName(e.kind())));
      PyErr_SetObject(error_type.ptr(), err.ptr());
    }
  });

  // Text and n-grams.
  m.def(
      "tokenize",
      [](const std::string &text) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const Token &t : Tokenize(text)) {
          out.emplace_back(t.surface, std::string(TokenKindName(t.kind)));
        }
        return out;
      },
      py::arg("text"), "Tokens of text as (surface, kind) pairs.");
  m.def(
      "extract_ngrams",
      [](const std::string &text, int min_n, int max_n,
         const std::vector<std::string> &stopwords, std::uint64_t min_freq) {
        StopwordSet stop;
        for (const auto &w : stopwords) stop.insert(ToLowerUtf8(w));
        return FromNGrams(
            ExtractNGrams(TokenizeLines(text), min_n, max_n, stop, min_freq));
      },
      py::arg("text"), py::arg("min_n") = 1, py::arg("max_n") = 3,
      py::arg("stopwords") = std::vector<std::string>{}, py::arg("min_freq") = 2,
      "(ngram, frequency) pairs, most frequent first.");

  py::class_<NGramTable>(m, "NGramTable")
      .def(py::init([](const std::string &text, double alpha) {
             return NGramTable::Build(TokenizeLines(text), alpha);
           }),
           py::arg("text"), py::arg("alpha") = 1.0)
      .def("unigram", &NGramTable::Unigram)
      .def("bigram", &NGramTable::Bigram)
      .def_property_readonly("total_tokens", &NGramTable::total_tokens)
      .def_property_readonly("vocab_size", &NGramTable::vocab_size);

  m.def(
      "segment_dp",
      [](const NGramTable &table, const std::u32string &hashtag,
         int max_word_len, const std::string &scoring) {
        SegmenterOptions opt;
        opt.max_word_len = max_word_len;
        opt.mode = ParseScoring(scoring);
        auto hyp = SegmentDp(table, hashtag, opt);
        return py::make_tuple(hyp.words, hyp.log_score);
      },
      py::arg("table"), py::arg("hashtag"), py::arg("max_word_len") = 20,
      py::arg("scoring") = "bigram",
      "Best (words, log_score) under the n-gram model.");

  // Labels and synthetic data.
  py::class_<LabeledHashtag>(m, "LabeledHashtag")
      .def(py::init([](const std::vector<std::u32string> &words,
                       const std::vector<bool> &underscores, int type_id) {
             std::vector<Joiner> joiners;
             for (bool u : underscores) {
               joiners.push_back(u ? Joiner::kUnderscore : Joiner::kNone);
             }
             if (joiners.empty() && !words.empty()) {
               joiners.assign(words.size() - 1, Joiner::kNone);
             }
             LabeledHashtag h = LabelsFromSegmentation(words, joiners);
             h.type_id = type_id;
             return h;
           }),
           py::arg("words"), py::arg("underscores") = std::vector<bool>{},
           py::arg("type_id") = -1)
      .def_readonly("chars", &LabeledHashtag::chars)
      .def_readonly("labels", &LabeledHashtag::labels)
      .def_readonly("gold", &LabeledHashtag::gold)
      .def_readonly("type_id", &LabeledHashtag::type_id)
      .def("__repr__", [](const LabeledHashtag &h) {
        return "LabeledHashtag('" + EncodeUtf8(h.chars) + "', '" +
               JoinWords(h.gold) + "', type_id=" + std::to_string(h.type_id) +
               ")";
      });

  m.def(
      "apply_labels",
      [](const std::u32string &chars, const Labels &labels) {
        return ApplyLabels(chars, labels);
      },
      py::arg("chars"), py::arg("labels"));
  m.def(
      "align_segmentation",
      [](const std::u32string &chars, const std::vector<std::u32string> &words) {
        return AlignSegmentation(chars, words);
      },
      py::arg("chars"), py::arg("words"));
  m.def(
      "generate_dataset",
      [](const std::vector<std::pair<std::string, std::uint64_t>> &ngrams,
         size_t count, std::uint64_t seed) {
        return GenerateDataset(ToNGrams(ngrams), BuiltinCatalog(), count, seed);
      },
      py::arg("ngrams"), py::arg("count"), py::arg("seed") = 0);
  m.def("format_dataset", [](const std::vector<LabeledHashtag> &items) {
    return FormatDataset(items);
  });
  m.def("parse_dataset", [](const std::string &text) {
    return ParseDataset(text);
  });

  // Model.
  py::class_<ModelCheckpoint>(m, "Model")
      .def_property_readonly("embed_dim",
                             [](const ModelCheckpoint &c) { return c.config.embed_dim; })
      .def_property_readonly("hidden_dim",
                             [](const ModelCheckpoint &c) { return c.config.hidden_dim; })
      .def_property_readonly("merge",
                             [](const ModelCheckpoint &c) {
                               return c.config.merge == MergeMode::kSum ? "sum"
                                                                        : "concat";
                             })
      .def_property_readonly(
          "vocab",
          [](const ModelCheckpoint &c) {
            std::u32string s(c.vocab.chars().begin(), c.vocab.chars().end());
            return s;
          })
      .def("serialize",
           [](const ModelCheckpoint &c) { return py::bytes(SerializeCheckpoint(c)); })
      .def_static("deserialize",
                  [](const py::bytes &b) {
                    return DeserializeCheckpoint(std::string(b));
                  })
      .def("save", &SaveCheckpoint, py::arg("path"))
      .def_static("load", &LoadCheckpoint, py::arg("path"))
      .def("__eq__", [](const ModelCheckpoint &a, const ModelCheckpoint &b) {
        return a == b;
      });

  m.def(
      "train",
      [](const std::vector<LabeledHashtag> &data, int epochs, double lr,
         double clip, std::uint64_t seed, int embed_dim, int hidden_dim,
         const std::string &merge) {
        TrainConfig config;
        config.epochs = epochs;
        config.learning_rate = lr;
        config.clip_norm = clip;
        config.seed = seed;
        config.model = MakeModelConfig(embed_dim, hidden_dim, merge);
        std::vector<double> losses;
        ModelCheckpoint chk;
        {
          py::gil_scoped_release release;
          chk = Train(data, config, &losses);
        }
        return py::make_tuple(chk, losses);
      },
      py::arg("data"), py::arg("epochs") = 5, py::arg("lr") = 0.1,
      py::arg("clip") = 5.0, py::arg("seed") = 0, py::arg("embed_dim") = 50,
      py::arg("hidden_dim") = 64, py::arg("merge") = "concat",
      "Returns (model, per-epoch mean losses).");
  m.def(
      "predict",
      [](const ModelCheckpoint &chk, const std::u32string &hashtag) {
        Prediction p = Predict(chk, hashtag);
        std::vector<double> p1;
        for (const auto &pr : p.probs) p1.push_back(pr[1]);
        return py::dict(py::arg("labels") = p.labels,
                        py::arg("boundary_probs") = p1,
                        py::arg("mnlp") = p.mnlp,
                        py::arg("words") = ApplyLabels(hashtag, p.labels));
      },
      py::arg("model"), py::arg("hashtag"));
  m.def(
      "mnlp",
      [](const std::vector<std::pair<double, double>> &probs) {
        std::vector<LabelProbs> lp;
        for (const auto &[a, b] : probs) lp.push_back({a, b});
        return Mnlp(lp);
      },
      py::arg("probs"), "Mean log of the larger probability per position.");

  // Evaluation and projection.
  m.def(
      "evaluate",
      [](const ModelCheckpoint &chk, const std::vector<LabeledHashtag> &test) {
        return ReportDict(Evaluate(chk, test));
      },
      py::arg("model"), py::arg("test"));
  m.def(
      "evaluate_baseline",
      [](const NGramTable &table, const std::vector<LabeledHashtag> &test,
         int max_word_len, const std::string &scoring) {
        SegmenterOptions opt;
        opt.max_word_len = max_word_len;
        opt.mode = ParseScoring(scoring);
        return ReportDict(EvaluateBaseline(table, test, opt));
      },
      py::arg("table"), py::arg("test"), py::arg("max_word_len") = 20,
      py::arg("scoring") = "bigram");
  m.def(
      "svd_top2",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> a) {
        if (a.ndim() != 2) {
          throw Error(ErrorKind::kInvalidArgument, "expected a 2-D array");
        }
        Matrix mat(a.shape(0), a.shape(1));
        auto view = a.unchecked<2>();
        for (py::ssize_t r = 0; r < a.shape(0); ++r) {
          for (py::ssize_t c = 0; c < a.shape(1); ++c) mat(r, c) = view(r, c);
        }
        EmbeddingProjection p = SvdTop2(mat);
        py::array_t<double> points({a.shape(0), py::ssize_t{2}});
        auto out = points.mutable_unchecked<2>();
        for (size_t r = 0; r < p.points.size(); ++r) {
          out(r, 0) = p.points[r][0];
          out(r, 1) = p.points[r][1];
        }
        return py::dict(py::arg("points") = points,
                        py::arg("singular_values") = p.singular_values,
                        py::arg("axes") = p.axes,
                        py::arg("explained_ratio") = p.explained_ratio,
                        py::arg("residual") = p.residual,
                        py::arg("iterations") = p.iterations);
      },
      py::arg("matrix"));
  m.def(
      "project_embeddings",
      [](const ModelCheckpoint &chk) {
        std::vector<py::tuple> out;
        for (const CharPoint &p : ProjectEmbeddings(chk)) {
          out.push_back(py::make_tuple(std::u32string(1, p.ch),
                                       std::string(CharCategory(p.ch)), p.x,
                                       p.y));
        }
        return out;
      },
      py::arg("model"), "(char, category, x, y) per known character.");

  // Active learning.
  m.def(
      "al_run",
      [](const std::vector<LabeledHashtag> &pool,
         const std::vector<LabeledHashtag> &test, size_t round_size,
         int epochs_per_round, std::uint64_t seed,
         const std::string &retrain_mode, size_t max_rounds, int embed_dim,
         int hidden_dim, const std::string &merge) {
        AlConfig config;
        config.round_size = round_size;
        config.epochs_per_round = epochs_per_round;
        config.seed = seed;
        config.retrain_mode = ParseRetrain(retrain_mode);
        config.max_rounds = max_rounds;
        config.model = MakeModelConfig(embed_dim, hidden_dim, merge);
        std::vector<AlRoundLog> rounds;
        {
          py::gil_scoped_release release;
          rounds = AlRun(pool, test, config);
        }
        py::list out;
        for (const AlRoundLog &r : rounds) {
          out.append(py::dict(py::arg("round_index") = r.round_index,
                              py::arg("train_size") = r.train_size,
                              py::arg("selected_ids") = r.selected_ids,
                              py::arg("test_accuracy") = r.test_accuracy,
                              py::arg("type_histogram") = r.type_histogram));
        }
        return out;
      },
      py::arg("pool"), py::arg("test"), py::arg("round_size") = 1000,
      py::arg("epochs_per_round") = 2, py::arg("seed") = 0,
      py::arg("retrain_mode") = "continue", py::arg("max_rounds") = 0,
      py::arg("embed_dim") = 50, py::arg("hidden_dim") = 64,
      py::arg("merge") = "concat");
}
