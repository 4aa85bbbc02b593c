#pragma once
// UTF-8 <-> scalar-value conversion and the character classes the tokenizer
// needs, backed by ICU's property tables.

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace ontorec::unicode {

inline constexpr char32_t kReplacement = 0xFFFD;

// Malformed sequences decode to U+FFFD, one per offending byte run.
inline std::u32string decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    out.push_back(c < 0 ? kReplacement : static_cast<char32_t>(c));
  }
  return out;
}

inline void append(std::string& out, char32_t c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  U8_APPEND_UNSAFE(buf, n, static_cast<UChar32>(c));
  out.append(reinterpret_cast<const char*>(buf), static_cast<size_t>(n));
}

inline std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) append(out, c);
  return out;
}

inline bool is_letter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)) != 0; }
inline bool is_digit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)) != 0; }
inline bool is_punct(char32_t c) { return u_ispunct(static_cast<UChar32>(c)) != 0; }
inline bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0; }

inline bool is_apostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

// Simple (1:1) case folding.
inline char32_t fold(char32_t c) {
  return static_cast<char32_t>(u_foldCase(static_cast<UChar32>(c), U_FOLD_CASE_DEFAULT));
}

inline std::string fold(std::string_view utf8) {
  std::string out;
  out.reserve(utf8.size());
  for (char32_t c : decode(utf8)) append(out, fold(c));
  return out;
}

// Case-folded, with every whitespace run collapsed to one ASCII space and the
// ends trimmed. Used as the entity dedup key.
inline std::string normalize_surface(std::string_view utf8) {
  std::string out;
  bool pending_space = false;
  for (char32_t c : decode(utf8)) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    append(out, fold(c));
  }
  return out;
}

}  // namespace ontorec::unicode
