#pragma once
// Language-light tokenizer. Offsets count Unicode scalar values.
//
//   word    maximal run of letters, apostrophes allowed between two letters
//           ("l'usine" is one word)
//   number  maximal run of decimal digits
//   punct   any other single punctuation character
//   symbol  any other single non-space character

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ontorec/unicode.hpp"

namespace ontorec {

enum class TokenKind { Word, Number, Punct, Symbol };

inline std::string_view token_kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::Word: return "word";
    case TokenKind::Number: return "number";
    case TokenKind::Punct: return "punct";
    case TokenKind::Symbol: return "symbol";
  }
  return "";
}

inline bool parse_token_kind(std::string_view s, TokenKind& out) {
  for (TokenKind k : {TokenKind::Word, TokenKind::Number, TokenKind::Punct, TokenKind::Symbol}) {
    if (token_kind_name(k) == s) {
      out = k;
      return true;
    }
  }
  return false;
}

struct Token {
  std::string text;  // UTF-8
  std::size_t start = 0;
  std::size_t end = 0;
  TokenKind kind = TokenKind::Word;

  bool operator==(const Token&) const = default;
};

inline std::vector<Token> tokenize(std::u32string_view text) {
  using namespace unicode;
  std::vector<Token> out;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    const char32_t c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    TokenKind kind;
    if (is_letter(c)) {
      kind = TokenKind::Word;
      while (j < n) {
        if (is_letter(text[j])) {
          ++j;
        } else if (is_apostrophe(text[j]) && j + 1 < n && is_letter(text[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
    } else if (is_digit(c)) {
      kind = TokenKind::Number;
      while (j < n && is_digit(text[j])) ++j;
    } else {
      kind = is_punct(c) ? TokenKind::Punct : TokenKind::Symbol;
    }
    out.push_back({encode(text.substr(i, j - i)), i, j, kind});
    i = j;
  }
  return out;
}

inline std::vector<Token> tokenize(std::string_view utf8) {
  return tokenize(std::u32string_view(unicode::decode(utf8)));
}

}  // namespace ontorec
