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
#ifndef HASHSEG_TESTS_TEST_UTIL_H_
#define HASHSEG_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include "hashseg/error.h"
#include "hashseg/rng.h"
#include "hashseg/seg_model.h"
#include "hashseg/unicode.h"

namespace hashseg::testing {

inline std::u32string U(const std::string &s) { return DecodeUtf8(s); }

inline std::vector<std::u32string> Words(
    std::initializer_list<const char *> words) {
  std::vector<std::u32string> out;
  for (const char *w : words) out.push_back(DecodeUtf8(w));
  return out;
}

inline std::vector<std::string> Utf8(const std::vector<std::u32string> &ws) {
  std::vector<std::string> out;
  for (const auto &w : ws) out.push_back(EncodeUtf8(w));
  return out;
}

inline double RelError(double a, double b) {
  double scale = std::max({std::abs(a), std::abs(b), 1e-8});
  return std::abs(a - b) / scale;
}

// Runs fn and returns the kind of the hashseg::Error it throws.
template <typename Fn>
ErrorKind ThrownKind(Fn &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  throw std::logic_error("expected hashseg::Error");
}

// Random model over the first vocab_size - 1 lowercase letters with every
// parameter drawn from Uniform(-scale, scale).
inline ModelCheckpoint RandomModel(size_t vocab_size, int embed_dim,
                                   int hidden_dim, MergeMode merge,
                                   std::uint64_t seed, double scale = 0.5) {
  std::vector<char32_t> chars;
  for (size_t i = 0; i + 1 < vocab_size; ++i) chars.push_back(U'a' + i);
  ModelConfig config;
  config.embed_dim = embed_dim;
  config.hidden_dim = hidden_dim;
  config.merge = merge;
  Rng rng(seed);
  ModelCheckpoint chk = InitCheckpoint(Vocab(chars), config, rng);
  for (auto t : chk.params.Tensors()) {
    for (double &v : t) v = rng.Uniform(-scale, scale);
  }
  return chk;
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string &tag) {
    Rng rng(std::hash<std::string>()(tag) ^
            static_cast<std::uint64_t>(
                std::filesystem::file_time_type::clock::now()
                    .time_since_epoch()
                    .count()));
    path_ = std::filesystem::temp_directory_path() /
            ("hashseg_" + tag + "_" + std::to_string(rng.Next() % 1000000007));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  std::string File(const std::string &name) const {
    return (path_ / name).string();
  }
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace hashseg::testing

#endif  // HASHSEG_TESTS_TEST_UTIL_H_
