#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cmgeval {

/// One word of a message.
///
/// `surface` is the matching form every metric compares. `tokenize` leaves it exactly as
/// read; `preprocess` replaces it with `folded` when case folding is on. `stem` is always
/// the Porter stem of the form the metrics will see.
struct Token {
  std::string surface;
  std::string folded;
  std::string stem;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Ordered tokens of a source string.
struct TokenSeq {
  std::vector<Token> tokens;
  std::string source;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  const Token& operator[](std::size_t i) const { return tokens[i]; }
  auto begin() const noexcept { return tokens.begin(); }
  auto end() const noexcept { return tokens.end(); }

  /// Matching forms in order.
  std::vector<std::string> forms() const;
  /// True when both sequences have the same matching forms in the same order.
  bool same_forms(const TokenSeq& other) const;
};

struct PrepConfig {
  bool lowercase = false;
  bool strip_punctuation = false;
};

bool is_ascii_punctuation(char c) noexcept;
bool is_ascii_space(char c) noexcept;
/// True for a non-empty string made only of ASCII punctuation.
bool is_punctuation_token(std::string_view s) noexcept;
/// ASCII-only lower-casing; bytes outside A-Z pass through untouched.
std::string ascii_lower(std::string_view s);

/// Splits on ASCII whitespace, then detaches leading and trailing punctuation characters
/// as one-character tokens. Interior punctuation ("v1.2", "user_id") stays attached.
TokenSeq tokenize(std::string_view text);

/// tokenize, then optional case folding, then optional removal of all-punctuation tokens.
TokenSeq preprocess(std::string_view text, const PrepConfig& cfg);

/// Builds a token sequence from already-split words (no further splitting).
TokenSeq make_token_seq(const std::vector<std::string>& words);

/// Porter (1980) suffix-stripping stemmer.
std::string porter_stem(std::string_view word);

}  // namespace cmgeval
