//
// Copyright 2026 The PerturbKit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "perturbkit/tokenizer.h"

#include <cstdint>

namespace perturbkit {
namespace {

enum class CharClass { kSpace, kPunct, kWord };

// Decodes one UTF-8 sequence at `pos`. Invalid bytes decode as themselves
// with length 1 and are treated as word characters.
char32_t Decode(std::string_view text, size_t pos, size_t* length) {
  const auto byte = static_cast<unsigned char>(text[pos]);
  size_t n = 1;
  char32_t cp = byte;
  if (byte >= 0xF0 && byte < 0xF8) {
    n = 4;
    cp = byte & 0x07;
  } else if (byte >= 0xE0) {
    n = 3;
    cp = byte & 0x0F;
  } else if (byte >= 0xC0) {
    n = 2;
    cp = byte & 0x1F;
  } else {
    *length = 1;
    return byte;
  }
  if (pos + n > text.size()) {
    *length = 1;
    return byte;
  }
  for (size_t i = 1; i < n; ++i) {
    const auto cont = static_cast<unsigned char>(text[pos + i]);
    if ((cont & 0xC0) != 0x80) {
      *length = 1;
      return byte;
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  *length = n;
  return cp;
}

CharClass Classify(char32_t cp) {
  if (cp < 0x80) {
    if (cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
        cp == '\v') {
      return CharClass::kSpace;
    }
    const bool alnum = (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
                       (cp >= 'A' && cp <= 'Z');
    if (alnum) return CharClass::kWord;
    // Control characters other than whitespace stick to words.
    if (cp < 0x20 || cp == 0x7F) return CharClass::kWord;
    return CharClass::kPunct;
  }
  if (cp == 0xA0 || cp == 0x3000 || (cp >= 0x2000 && cp <= 0x200A)) {
    return CharClass::kSpace;
  }
  if (cp == 0xA1 || cp == 0xAB || cp == 0xBB || cp == 0xBF || cp == 0xB7 ||
      (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) ||
      cp == 0x3001 || cp == 0x3002) {
    return CharClass::kPunct;
  }
  return CharClass::kWord;
}

bool IsSentenceTerminal(std::string_view text) {
  return text == "." || text == "!" || text == "?" || text == "…" ||
         text == kSepToken;
}

// Tokens that do not affect sentence-start state.
bool IsOpener(std::string_view text) {
  return text == "\"" || text == "'" || text == "(" || text == "[" ||
         text == "`" || text == "“" || text == "‘" ||
         text == "”" || text == "’" || text == ")" || text == "]";
}

bool IsAsciiUpper(char c) { return c >= 'A' && c <= 'Z'; }
bool IsAsciiLower(char c) { return c >= 'a' && c <= 'z'; }

}  // namespace

bool Token::is_word() const {
  for (char c : text) {
    if (IsAsciiUpper(c) || IsAsciiLower(c) || (c >= '0' && c <= '9') ||
        static_cast<unsigned char>(c) >= 0x80) {
      return !is_special();
    }
  }
  return false;
}

bool Token::is_special() const {
  return text == kSepToken || text == kPertSepToken;
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  bool sentence_start = true;
  size_t pos = 0;
  auto emit = [&](size_t begin, size_t end, bool word) {
    Token token;
    token.text = std::string(text.substr(begin, end - begin));
    token.span = {begin, end};
    if (word) {
      token.sentence_initial = sentence_start;
      token.capitalization = ClassifyCapitalization(token.text);
      sentence_start = false;
    } else if (IsSentenceTerminal(token.text)) {
      sentence_start = true;
    } else if (!IsOpener(token.text)) {
      sentence_start = false;
    }
    tokens.push_back(std::move(token));
  };

  while (pos < text.size()) {
    if (text[pos] == '<') {
      bool special = false;
      for (std::string_view marker : {kSepToken, kPertSepToken}) {
        if (text.substr(pos, marker.size()) == marker) {
          emit(pos, pos + marker.size(), false);
          pos += marker.size();
          special = true;
          break;
        }
      }
      if (special) continue;
    }
    size_t length = 0;
    const CharClass cls = Classify(Decode(text, pos, &length));
    if (cls == CharClass::kSpace) {
      pos += length;
      continue;
    }
    if (cls == CharClass::kPunct) {
      emit(pos, pos + length, false);
      pos += length;
      continue;
    }
    const size_t begin = pos;
    pos += length;
    while (pos < text.size()) {
      if (text[pos] == '<' && (text.substr(pos, kSepToken.size()) == kSepToken ||
                               text.substr(pos, kPertSepToken.size()) ==
                                   kPertSepToken)) {
        break;
      }
      if (Classify(Decode(text, pos, &length)) != CharClass::kWord) break;
      pos += length;
    }
    emit(begin, pos, true);
  }
  return tokens;
}

std::string Detokenize(std::string_view source, std::span<const Token> tokens) {
  std::string out;
  size_t cursor = 0;
  for (const Token& token : tokens) {
    out.append(source.substr(cursor, token.span.begin - cursor));
    out.append(source.substr(token.span.begin, token.span.size()));
    cursor = token.span.end;
  }
  out.append(source.substr(cursor));
  return out;
}

Capitalization ClassifyCapitalization(std::string_view word) {
  int letters = 0;
  int upper = 0;
  bool first_upper = false;
  bool rest_lower = true;
  for (char c : word) {
    if (!IsAsciiUpper(c) && !IsAsciiLower(c)) continue;
    if (letters == 0) {
      first_upper = IsAsciiUpper(c);
    } else if (IsAsciiUpper(c)) {
      rest_lower = false;
    }
    upper += IsAsciiUpper(c) ? 1 : 0;
    ++letters;
  }
  if (upper == 0) return Capitalization::kLower;
  if (first_upper && rest_lower) return Capitalization::kTitle;
  if (upper == letters) return Capitalization::kUpper;
  return Capitalization::kMixed;
}

std::string ApplyCapitalization(std::string_view replacement,
                                Capitalization capitalization) {
  std::string out(replacement);
  switch (capitalization) {
    case Capitalization::kTitle:
      for (char& c : out) {
        if (IsAsciiLower(c) || IsAsciiUpper(c)) {
          if (IsAsciiLower(c)) c = static_cast<char>(c - 'a' + 'A');
          break;
        }
      }
      break;
    case Capitalization::kUpper:
      for (char& c : out) {
        if (IsAsciiLower(c)) c = static_cast<char>(c - 'a' + 'A');
      }
      break;
    case Capitalization::kLower:
    case Capitalization::kMixed:
      break;
  }
  return out;
}

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (IsAsciiUpper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> LowerTokenTexts(std::string_view text) {
  std::vector<std::string> out;
  for (const Token& token : Tokenize(text)) out.push_back(AsciiLower(token.text));
  return out;
}

}  // namespace perturbkit
