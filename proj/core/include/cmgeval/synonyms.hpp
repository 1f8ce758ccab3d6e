#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cmgeval {

/// Word-level synonymy read from a synset file: one synset per line, whitespace-separated
/// words, the (1-based) line number being the synset id. Immutable once built.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;

  static SynonymLexicon parse(std::istream& in);
  static SynonymLexicon parse(std::string_view text);

  /// Identical words are always synonyms; otherwise the synset id sets must intersect.
  bool synonymous(std::string_view a, std::string_view b) const;

  /// Sorted synset ids of `word`; empty when unknown.
  const std::vector<std::size_t>& synsets(std::string_view word) const;

  std::size_t word_count() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

 private:
  std::unordered_map<std::string, std::vector<std::size_t>> ids_;
};

/// Throws IoError naming the path when the file cannot be read. An empty file is valid.
SynonymLexicon load_synonyms(const std::filesystem::path& path);

/// The commit-domain synset list bundled with the library.
std::string_view default_synonym_text();
const SynonymLexicon& default_synonyms();

}  // namespace cmgeval
