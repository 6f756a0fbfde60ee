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
#ifndef HASHSEG_UNICODE_H_
#define HASHSEG_UNICODE_H_

#include <string>
#include <string_view>

namespace hashseg {

// Character handling works on code points. Case mapping covers ASCII,
// Latin-1, Latin Extended-A, Greek and Cyrillic, which is what the supported
// hashtag languages need; other scripts are treated as caseless.

// Invalid UTF-8 sequences decode to U+FFFD.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);
std::string EncodeUtf8(char32_t ch);

char32_t ToLower(char32_t ch);
char32_t ToUpper(char32_t ch);
std::u32string ToLower(std::u32string_view text);
std::u32string ToUpper(std::u32string_view text);
std::string ToLowerUtf8(std::string_view text);

enum class CharClass {
  kSpace,
  kDigit,  // ASCII 0-9 only
  kUpper,
  kLower,
  kCaseless,  // a letter without case, or a combining mark
  kUnderscore,
  kPunct,  // punctuation, symbols, controls, emoji
};

CharClass Classify(char32_t ch);

inline bool IsSpace(char32_t ch) { return Classify(ch) == CharClass::kSpace; }
inline bool IsDigit(char32_t ch) { return ch >= U'0' && ch <= U'9'; }
inline bool IsLetter(char32_t ch) {
  CharClass c = Classify(ch);
  return c == CharClass::kUpper || c == CharClass::kLower ||
         c == CharClass::kCaseless;
}
inline bool IsAlnum(char32_t ch) { return IsDigit(ch) || IsLetter(ch); }

}  // namespace hashseg

#endif  // HASHSEG_UNICODE_H_
