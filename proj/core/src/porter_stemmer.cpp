// Porter's suffix-stripping algorithm as originally published (Program 14(3), 1980).
// Only lower-case a, e, i, o, u (and y after a consonant) count as vowels, so cased or
// non-alphabetic input is stemmed deterministically but conservatively.

#include <string>
#include <string_view>

#include "cmgeval/text_prep.hpp"

namespace cmgeval {

namespace {

class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : w_(word) {}

  std::string run() {
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5a();
    step5b();
    return w_;
  }

 private:
  bool is_consonant(std::size_t i) const {
    switch (w_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 || !is_consonant(i - 1);
      default:
        return true;
    }
  }

  // m in [C](VC)^m[V] over w_[0, len).
  int measure(std::size_t len) const {
    int m = 0;
    std::size_t i = 0;
    while (i < len && is_consonant(i)) ++i;
    while (i < len) {
      while (i < len && !is_consonant(i)) ++i;
      if (i >= len) break;
      while (i < len && is_consonant(i)) ++i;
      ++m;
    }
    return m;
  }

  bool has_vowel(std::size_t len) const {
    for (std::size_t i = 0; i < len; ++i) {
      if (!is_consonant(i)) return true;
    }
    return false;
  }

  bool double_consonant(std::size_t len) const {
    return len >= 2 && w_[len - 1] == w_[len - 2] && is_consonant(len - 1);
  }

  // *o: stem ends cvc and the final c is not w, x or y.
  bool cvc(std::size_t len) const {
    if (len < 3) return false;
    if (!is_consonant(len - 1) || is_consonant(len - 2) || !is_consonant(len - 3)) return false;
    const char c = w_[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends_with(std::string_view suffix) const {
    return w_.size() >= suffix.size() &&
           std::string_view(w_).substr(w_.size() - suffix.size()) == suffix;
  }

  std::size_t stem_len(std::string_view suffix) const { return w_.size() - suffix.size(); }

  void replace_suffix(std::string_view suffix, std::string_view repl) {
    w_.replace(stem_len(suffix), suffix.size(), repl);
  }

  struct Rule {
    std::string_view suffix;
    std::string_view repl;
  };

  // Longest matching suffix wins; when its condition fails, the step ends.
  template <std::size_t N, typename Cond>
  bool apply_rules(const Rule (&rules)[N], Cond cond) {
    const Rule* best = nullptr;
    for (const auto& r : rules) {
      if (ends_with(r.suffix) && (!best || r.suffix.size() > best->suffix.size())) best = &r;
    }
    if (!best || !cond(stem_len(best->suffix), best->suffix)) return false;
    replace_suffix(best->suffix, best->repl);
    return true;
  }

  void step1a() {
    if (ends_with("sses")) {
      replace_suffix("sses", "ss");
    } else if (ends_with("ies")) {
      replace_suffix("ies", "i");
    } else if (ends_with("ss")) {
      // unchanged
    } else if (ends_with("s")) {
      replace_suffix("s", "");
    }
  }

  void step1b() {
    if (ends_with("eed")) {
      if (measure(stem_len("eed")) > 0) replace_suffix("eed", "ee");
      return;
    }
    bool stripped = false;
    if (ends_with("ed") && has_vowel(stem_len("ed"))) {
      replace_suffix("ed", "");
      stripped = true;
    } else if (ends_with("ing") && has_vowel(stem_len("ing"))) {
      replace_suffix("ing", "");
      stripped = true;
    }
    if (!stripped) return;

    if (ends_with("at") || ends_with("bl") || ends_with("iz")) {
      w_ += 'e';
    } else if (double_consonant(w_.size())) {
      const char last = w_.back();
      if (last != 'l' && last != 's' && last != 'z') w_.pop_back();
    } else if (measure(w_.size()) == 1 && cvc(w_.size())) {
      w_ += 'e';
    }
  }

  void step1c() {
    if (ends_with("y") && has_vowel(stem_len("y"))) w_.back() = 'i';
  }

  void step2() {
    static constexpr Rule kRules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},   {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},     {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
    };
    apply_rules(kRules, [this](std::size_t len, std::string_view) { return measure(len) > 0; });
  }

  void step3() {
    static constexpr Rule kRules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    apply_rules(kRules, [this](std::size_t len, std::string_view) { return measure(len) > 0; });
  }

  void step4() {
    static constexpr Rule kRules[] = {
        {"al", ""},  {"ance", ""}, {"ence", ""}, {"er", ""},  {"ic", ""},   {"able", ""},
        {"ible", ""}, {"ant", ""}, {"ement", ""}, {"ment", ""}, {"ent", ""}, {"ion", ""},
        {"ou", ""},  {"ism", ""},  {"ate", ""},  {"iti", ""}, {"ous", ""},  {"ive", ""},
        {"ize", ""},
    };
    apply_rules(kRules, [this](std::size_t len, std::string_view suffix) {
      if (measure(len) <= 1) return false;
      if (suffix == "ion") return len > 0 && (w_[len - 1] == 's' || w_[len - 1] == 't');
      return true;
    });
  }

  void step5a() {
    if (!ends_with("e")) return;
    const std::size_t len = stem_len("e");
    const int m = measure(len);
    if (m > 1 || (m == 1 && !cvc(len))) w_.pop_back();
  }

  void step5b() {
    if (measure(w_.size()) > 1 && double_consonant(w_.size()) && w_.back() == 'l') w_.pop_back();
  }

  std::string w_;
};

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.empty()) return {};
  return Stemmer(word).run();
}

}  // namespace cmgeval
