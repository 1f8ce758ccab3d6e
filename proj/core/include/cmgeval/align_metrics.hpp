#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "cmgeval/synonyms.hpp"
#include "cmgeval/text_prep.hpp"

namespace cmgeval {

/// Unigram matchers in priority order (lower value wins for the same token pair).
enum class MatcherType : std::uint8_t { kExact = 0, kStem = 1, kSynonym = 2 };

std::string_view matcher_name(MatcherType t);

struct Match {
  std::size_t pred = 0;
  std::size_t ref = 0;
  MatcherType type = MatcherType::kExact;

  friend bool operator==(const Match&, const Match&) = default;
  friend auto operator<=>(const Match& a, const Match& b) {
    if (auto c = a.pred <=> b.pred; c != 0) return c;
    return a.ref <=> b.ref;
  }
};

/// Every candidate (pred, ref) pair with its highest-priority matcher, sorted by (pred, ref).
struct MatchSet {
  std::vector<Match> candidates;
};

/// One-to-one subset of a MatchSet, sorted by pred index.
struct Alignment {
  std::vector<Match> matches;
  std::size_t chunk_count = 0;
  /// False when the exact search was skipped or cut short and a heuristic result was used.
  bool exact = true;
};

enum class FragMode {
  kMeteorClassic,  ///< beta * (chunks / matched)^gamma always
  kLogMnext,       ///< zero penalty when prediction and reference are identical
};

/// How word order enters the fragmentation penalty.
enum class WordOrder {
  kAligned,      ///< chunks from the alignment
  kSingleChunk,  ///< order ignored: chunk count fixed at 1
  kNoPenalty,    ///< order ignored: penalty dropped entirely
};

struct MatcherWeights {
  double exact = 1.0;
  double stem = 1.0;
  double synonym = 1.0;

  double operator[](MatcherType t) const noexcept;
};

/// Every METEOR-family knob. EXACT matching is always on.
struct MeteorParams {
  double alpha = 0.9;
  double beta = 0.5;
  double gamma = 3.0;
  MatcherWeights weights;
  bool stem_enabled = true;
  bool synonym_enabled = true;
  FragMode frag_mode = FragMode::kMeteorClassic;
  WordOrder word_order = WordOrder::kAligned;

  /// alpha = 0.9, beta = 0.5, gamma = 3, unit weights.
  static MeteorParams classic();
  /// Shipping defaults for METEOR-NEXT; same values as classic until tuned values are loaded.
  static MeteorParams next();
  /// next() with the identity-aware penalty.
  static MeteorParams log_mnext();

  /// Throws InvalidInputError: alpha in (0,1), beta in [0,1], gamma >= 0, weights in [0,1].
  void validate() const;
};

/// Reads `key = value` lines (keys alpha, beta, gamma, w_exact, w_stem, w_syn, frag_mode),
/// starting from `base`. `#` starts a comment. Unknown keys and bad values raise ValidationError.
MeteorParams parse_meteor_params(std::istream& in, MeteorParams base = MeteorParams::next(),
                                 std::string_view source = "<params>");
MeteorParams load_meteor_params(const std::filesystem::path& path,
                                MeteorParams base = MeteorParams::next());

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
  std::size_t pred_len = 0;
  std::size_t ref_len = 0;
  double weighted_matches = 0.0;
};

/// Full pipeline result for METEOR, METEOR-NEXT and Log-MNEXT.
struct AlignScore {
  double score = 0.0;
  Prf prf;
  double penalty = 0.0;
  Alignment alignment;
  bool identical = false;
  /// Set when either side was empty; the score is then 0.
  bool degenerate = false;
};

MatchSet match_unigrams(const TokenSeq& pred, const TokenSeq& ref, const MeteorParams& params,
                        const SynonymLexicon& lex);

/// Number of maximal runs of matches contiguous and identically ordered on both sides.
/// `matches` must be sorted by pred index.
std::size_t count_chunks(const std::vector<Match>& matches);

/// Picks a one-to-one subset with maximum cardinality, then minimum chunk count, then the
/// lexicographically smallest (pred, ref) match list. Exact branch-and-bound search unless
/// more than kExactAlignLimit prediction tokens have candidates.
Alignment align(const MatchSet& ms, std::size_t pred_len, std::size_t ref_len);

inline constexpr std::size_t kExactAlignLimit = 30;

Prf precision_recall_f(const Alignment& a, const MeteorParams& params, std::size_t pred_len,
                       std::size_t ref_len);

double frag_penalty(const Alignment& a, const MeteorParams& params, bool identical);

/// match -> align -> P/R/F -> penalty -> F * (1 - penalty), on already-prepared tokens.
AlignScore align_score(const TokenSeq& pred, const TokenSeq& ref, const MeteorParams& params,
                       const SynonymLexicon& lex);

AlignScore meteor(const TokenSeq& pred, const TokenSeq& ref, const SynonymLexicon& lex,
                  const MeteorParams& params = MeteorParams::classic());

AlignScore meteor_next(const TokenSeq& pred, const TokenSeq& ref, const SynonymLexicon& lex,
                       const MeteorParams& params = MeteorParams::next());

/// Lower-cases and strips punctuation from both raw strings, then scores with the
/// identity-aware penalty. `params.frag_mode` is forced to kLogMnext.
AlignScore log_mnext(std::string_view pred, std::string_view ref, const SynonymLexicon& lex,
                     MeteorParams params = MeteorParams::next());

}  // namespace cmgeval
