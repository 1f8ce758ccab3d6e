#include "cmgeval/text_prep.hpp"

#include <algorithm>

namespace cmgeval {

namespace {

Token make_token(std::string surface) {
  Token t;
  t.folded = ascii_lower(surface);
  t.stem = porter_stem(surface);
  t.surface = std::move(surface);
  return t;
}

}  // namespace

std::vector<std::string> TokenSeq::forms() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.surface);
  return out;
}

bool TokenSeq::same_forms(const TokenSeq& other) const {
  return std::equal(tokens.begin(), tokens.end(), other.tokens.begin(), other.tokens.end(),
                    [](const Token& a, const Token& b) { return a.surface == b.surface; });
}

bool is_ascii_punctuation(char c) noexcept {
  const auto u = static_cast<unsigned char>(c);
  return (u >= 33 && u <= 47) || (u >= 58 && u <= 64) || (u >= 91 && u <= 96) ||
         (u >= 123 && u <= 126);
}

bool is_ascii_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_punctuation_token(std::string_view s) noexcept {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_ascii_punctuation);
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

TokenSeq tokenize(std::string_view text) {
  TokenSeq seq;
  seq.source = std::string(text);

  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_ascii_space(text[j])) ++j;
    if (j == i) break;
    std::string_view word = text.substr(i, j - i);
    i = j;

    std::size_t lead = 0;
    while (lead < word.size() && is_ascii_punctuation(word[lead])) ++lead;
    std::size_t trail = word.size();
    while (trail > lead && is_ascii_punctuation(word[trail - 1])) --trail;

    for (std::size_t p = 0; p < lead; ++p) seq.tokens.push_back(make_token(std::string(1, word[p])));
    if (trail > lead) seq.tokens.push_back(make_token(std::string(word.substr(lead, trail - lead))));
    for (std::size_t p = trail; p < word.size(); ++p) seq.tokens.push_back(make_token(std::string(1, word[p])));
  }
  return seq;
}

TokenSeq preprocess(std::string_view text, const PrepConfig& cfg) {
  TokenSeq seq = tokenize(text);
  std::vector<Token> kept;
  kept.reserve(seq.tokens.size());
  for (auto& t : seq.tokens) {
    if (cfg.strip_punctuation && is_punctuation_token(t.surface)) continue;
    if (cfg.lowercase) {
      t.surface = t.folded;
      t.stem = porter_stem(t.surface);
    }
    kept.push_back(std::move(t));
  }
  seq.tokens = std::move(kept);
  return seq;
}

TokenSeq make_token_seq(const std::vector<std::string>& words) {
  TokenSeq seq;
  for (const auto& w : words) {
    if (!seq.source.empty()) seq.source += ' ';
    seq.source += w;
    seq.tokens.push_back(make_token(w));
  }
  return seq;
}

}  // namespace cmgeval
