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
#include "hashseg/unicode.h"

namespace hashseg {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool InRange(char32_t ch, char32_t lo, char32_t hi) {
  return ch >= lo && ch <= hi;
}

bool IsPunctNonAscii(char32_t ch) {
  if (InRange(ch, 0x80, 0xBF)) {
    return ch != 0xAA && ch != 0xB5 && ch != 0xBA;
  }
  return ch == 0xD7 || ch == 0xF7 || ch == 0x37E || ch == 0x387 ||
         ch == 0x482 || InRange(ch, 0x2000, 0x2BFF) ||
         InRange(ch, 0x2E00, 0x2E7F) || InRange(ch, 0x3000, 0x303F) ||
         InRange(ch, 0xD800, 0xDFFF) || InRange(ch, 0xE000, 0xF8FF) ||
         InRange(ch, 0xFE10, 0xFE1F) || InRange(ch, 0xFE30, 0xFE6F) ||
         InRange(ch, 0xFF01, 0xFF0F) || InRange(ch, 0xFF1A, 0xFF20) ||
         InRange(ch, 0xFF3B, 0xFF40) || InRange(ch, 0xFF5B, 0xFF65) ||
         InRange(ch, 0xFFF0, 0xFFFF) || InRange(ch, 0x1F000, 0x1FAFF);
}

bool IsSpaceCodePoint(char32_t ch) {
  return InRange(ch, 0x09, 0x0D) || ch == 0x20 || ch == 0x85 || ch == 0xA0 ||
         ch == 0x1680 || InRange(ch, 0x2000, 0x200B) || ch == 0x2028 ||
         ch == 0x2029 || ch == 0x202F || ch == 0x205F || ch == 0x3000;
}

}  // namespace

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    unsigned char lead = static_cast<unsigned char>(text[i]);
    int extra;
    char32_t cp;
    if (lead < 0x80) {
      out.push_back(lead);
      ++i;
      continue;
    } else if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      cp = lead & 0x07;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + extra >= text.size()) {
      // Truncated sequence at the end of input.
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      unsigned char cont = static_cast<unsigned char>(text[i + k]);
      if ((cont & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cont & 0x3F);
    }
    static constexpr char32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
    if (!ok || cp < kMinForLength[extra] || cp > 0x10FFFF ||
        InRange(cp, 0xD800, 0xDFFF)) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string EncodeUtf8(char32_t ch) {
  std::string out;
  if (ch < 0x80) {
    out.push_back(static_cast<char>(ch));
  } else if (ch < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (ch >> 6)));
    out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
  } else if (ch < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (ch >> 12)));
    out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (ch >> 18)));
    out.push_back(static_cast<char>(0x80 | ((ch >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((ch >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (ch & 0x3F)));
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t ch : text) out += EncodeUtf8(ch);
  return out;
}

char32_t ToLower(char32_t ch) {
  if (ch < 0x80) return InRange(ch, 'A', 'Z') ? ch + 32 : ch;
  if (InRange(ch, 0xC0, 0xDE) && ch != 0xD7) return ch + 32;
  if (ch == 0x130) return U'i';
  if (InRange(ch, 0x100, 0x137)) return ch % 2 == 0 ? ch + 1 : ch;
  if (InRange(ch, 0x139, 0x148)) return ch % 2 == 1 ? ch + 1 : ch;
  if (InRange(ch, 0x14A, 0x177)) return ch % 2 == 0 ? ch + 1 : ch;
  if (ch == 0x178) return 0xFF;
  if (InRange(ch, 0x179, 0x17E)) return ch % 2 == 1 ? ch + 1 : ch;
  if (ch == 0x386) return 0x3AC;
  if (InRange(ch, 0x388, 0x38A)) return ch + 37;
  if (ch == 0x38C) return 0x3CC;
  if (InRange(ch, 0x38E, 0x38F)) return ch + 63;
  if (InRange(ch, 0x391, 0x3A9) && ch != 0x3A2) return ch + 32;
  if (InRange(ch, 0x400, 0x40F)) return ch + 80;
  if (InRange(ch, 0x410, 0x42F)) return ch + 32;
  if (InRange(ch, 0x460, 0x481)) return ch % 2 == 0 ? ch + 1 : ch;
  if (InRange(ch, 0x48A, 0x4BF)) return ch % 2 == 0 ? ch + 1 : ch;
  if (InRange(ch, 0x4C1, 0x4CE)) return ch % 2 == 1 ? ch + 1 : ch;
  if (InRange(ch, 0x4D0, 0x52F)) return ch % 2 == 0 ? ch + 1 : ch;
  return ch;
}

char32_t ToUpper(char32_t ch) {
  if (ch < 0x80) return InRange(ch, 'a', 'z') ? ch - 32 : ch;
  if (InRange(ch, 0xE0, 0xFE) && ch != 0xF7) return ch - 32;
  if (ch == 0xFF) return 0x178;
  if (ch == 0x131) return U'I';
  if (InRange(ch, 0x101, 0x137)) return ch % 2 == 1 ? ch - 1 : ch;
  if (InRange(ch, 0x13A, 0x148)) return ch % 2 == 0 ? ch - 1 : ch;
  if (InRange(ch, 0x14B, 0x177)) return ch % 2 == 1 ? ch - 1 : ch;
  if (InRange(ch, 0x17A, 0x17E)) return ch % 2 == 0 ? ch - 1 : ch;
  if (ch == 0x3AC) return 0x386;
  if (InRange(ch, 0x3AD, 0x3AF)) return ch - 37;
  if (ch == 0x3CC) return 0x38C;
  if (InRange(ch, 0x3CD, 0x3CE)) return ch - 63;
  if (ch == 0x3C2) return 0x3A3;
  if (InRange(ch, 0x3B1, 0x3C9)) return ch - 32;
  if (InRange(ch, 0x430, 0x44F)) return ch - 32;
  if (InRange(ch, 0x450, 0x45F)) return ch - 80;
  if (InRange(ch, 0x461, 0x481)) return ch % 2 == 1 ? ch - 1 : ch;
  if (InRange(ch, 0x48B, 0x4BF)) return ch % 2 == 1 ? ch - 1 : ch;
  if (InRange(ch, 0x4C2, 0x4CE)) return ch % 2 == 0 ? ch - 1 : ch;
  if (InRange(ch, 0x4D1, 0x52F)) return ch % 2 == 1 ? ch - 1 : ch;
  return ch;
}

std::u32string ToLower(std::u32string_view text) {
  std::u32string out(text);
  for (char32_t &ch : out) ch = ToLower(ch);
  return out;
}

std::u32string ToUpper(std::u32string_view text) {
  std::u32string out(text);
  for (char32_t &ch : out) ch = ToUpper(ch);
  return out;
}

std::string ToLowerUtf8(std::string_view text) {
  return EncodeUtf8(ToLower(DecodeUtf8(text)));
}

CharClass Classify(char32_t ch) {
  if (ch == U'_') return CharClass::kUnderscore;
  if (IsDigit(ch)) return CharClass::kDigit;
  if (IsSpaceCodePoint(ch)) return CharClass::kSpace;
  if (ch < 0x80) {
    if (InRange(ch, 'A', 'Z')) return CharClass::kUpper;
    if (InRange(ch, 'a', 'z')) return CharClass::kLower;
    return CharClass::kPunct;
  }
  if (IsPunctNonAscii(ch)) return CharClass::kPunct;
  if (ToLower(ch) != ch) return CharClass::kUpper;
  if (ToUpper(ch) != ch || ch == 0xDF) return CharClass::kLower;
  return CharClass::kCaseless;
}

}  // namespace hashseg
