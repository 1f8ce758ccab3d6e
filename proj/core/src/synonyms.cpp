#include "cmgeval/synonyms.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cmgeval/error.hpp"

namespace cmgeval {

SynonymLexicon SynonymLexicon::parse(std::istream& in) {
  SynonymLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words(line);
    std::string w;
    while (words >> w) {
      auto& ids = lex.ids_[w];
      if (ids.empty() || ids.back() != line_no) ids.push_back(line_no);
    }
  }
  return lex;
}

SynonymLexicon SynonymLexicon::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

const std::vector<std::size_t>& SynonymLexicon::synsets(std::string_view word) const {
  static const std::vector<std::size_t> kNone;
  const auto it = ids_.find(std::string(word));
  return it == ids_.end() ? kNone : it->second;
}

bool SynonymLexicon::synonymous(std::string_view a, std::string_view b) const {
  if (a == b) return true;
  const auto& sa = synsets(a);
  const auto& sb = synsets(b);
  // Both lists are sorted by construction (line numbers only increase).
  auto i = sa.begin();
  auto j = sb.begin();
  while (i != sa.end() && j != sb.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

SynonymLexicon load_synonyms(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read synonym file: " + path.string());
  return SynonymLexicon::parse(in);
}

const SynonymLexicon& default_synonyms() {
  static const SynonymLexicon kLexicon = SynonymLexicon::parse(default_synonym_text());
  return kLexicon;
}

}  // namespace cmgeval
