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
#include "hashseg/error.h"

namespace hashseg {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kMalformedInput: return "malformed-input";
    case ErrorKind::kCorruptCheckpoint: return "corrupt-checkpoint";
    case ErrorKind::kVersionMismatch: return "version-mismatch";
    case ErrorKind::kShapeMismatch: return "shape-mismatch";
  }
  return "unknown";
}

}  // namespace hashseg
