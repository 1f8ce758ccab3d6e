#include "cmgeval/align_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmgeval/error.hpp"

namespace cmgeval {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kSearchNodeBudget = 2'000'000;

using CandidateLists = std::vector<std::vector<Match>>;

CandidateLists group_by_pred(const MatchSet& ms, std::size_t pred_len, std::size_t ref_len) {
  CandidateLists cand(pred_len);
  for (const auto& m : ms.candidates) {
    if (m.pred >= pred_len || m.ref >= ref_len) {
      throw InvalidInputError("match index out of range for the given sequence lengths");
    }
    cand[m.pred].push_back(m);
  }
  for (auto& list : cand) {
    std::sort(list.begin(), list.end(), [](const Match& a, const Match& b) {
      return a.ref != b.ref ? a.ref < b.ref : a.type < b.type;
    });
    list.erase(std::unique(list.begin(), list.end(),
                           [](const Match& a, const Match& b) { return a.ref == b.ref; }),
               list.end());
  }
  return cand;
}

// Kuhn's augmenting-path bipartite matching. `ref_owner[j]` is the pred index holding ref j.
class Augmenter {
 public:
  Augmenter(const CandidateLists& cand, std::vector<std::size_t>& ref_owner,
            std::vector<std::size_t>& pred_ref)
      : cand_(cand), ref_owner_(ref_owner), pred_ref_(pred_ref), seen_(ref_owner.size()) {}

  bool augment(std::size_t i) {
    std::fill(seen_.begin(), seen_.end(), 0);
    return visit(i);
  }

 private:
  bool visit(std::size_t i) {
    for (const auto& m : cand_[i]) {
      if (seen_[m.ref]) continue;
      seen_[m.ref] = 1;
      if (ref_owner_[m.ref] == kNone || visit(ref_owner_[m.ref])) {
        ref_owner_[m.ref] = i;
        pred_ref_[i] = m.ref;
        return true;
      }
    }
    return false;
  }

  const CandidateLists& cand_;
  std::vector<std::size_t>& ref_owner_;
  std::vector<std::size_t>& pred_ref_;
  std::vector<char> seen_;
};

std::vector<Match> to_matches(const CandidateLists& cand, const std::vector<std::size_t>& pred_ref) {
  std::vector<Match> out;
  for (std::size_t i = 0; i < pred_ref.size(); ++i) {
    if (pred_ref[i] == kNone) continue;
    for (const auto& m : cand[i]) {
      if (m.ref == pred_ref[i]) out.push_back(m);
    }
  }
  return out;
}

std::size_t max_cardinality(const CandidateLists& cand, std::size_t ref_len) {
  std::vector<std::size_t> owner(ref_len, kNone), pred_ref(cand.size(), kNone);
  Augmenter aug(cand, owner, pred_ref);
  std::size_t n = 0;
  for (std::size_t i = 0; i < cand.size(); ++i) n += aug.augment(i) ? 1 : 0;
  return n;
}

// Continuation-preferring greedy pass, then augmenting paths to reach maximum cardinality.
std::vector<Match> heuristic_alignment(const CandidateLists& cand, std::size_t ref_len) {
  std::vector<std::size_t> owner(ref_len, kNone), pred_ref(cand.size(), kNone);
  std::size_t last_ref = kNone;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const bool prev_matched = i > 0 && pred_ref[i - 1] != kNone;
    std::size_t pick = kNone;
    std::size_t after_last = kNone;
    for (const auto& m : cand[i]) {
      if (owner[m.ref] != kNone) continue;
      if (prev_matched && m.ref == pred_ref[i - 1] + 1) {
        pick = m.ref;
        break;
      }
      if (pick == kNone) pick = m.ref;
      if (after_last == kNone && (last_ref == kNone || m.ref > last_ref)) after_last = m.ref;
    }
    if (after_last != kNone && !(prev_matched && pick == pred_ref[i - 1] + 1)) pick = after_last;
    if (pick != kNone) {
      owner[pick] = i;
      pred_ref[i] = pick;
      last_ref = pick;
    }
  }
  Augmenter aug(cand, owner, pred_ref);
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (pred_ref[i] == kNone && !cand[i].empty()) aug.augment(i);
  }
  return to_matches(cand, pred_ref);
}

// Depth-first search over prediction positions in (pred, ref) lexicographic order. Only
// alignments reaching the maximum cardinality are accepted, and a later one replaces the
// incumbent only with strictly fewer chunks, so the first optimum found is the
// lexicographically smallest.
class ExactSearch {
 public:
  ExactSearch(const CandidateLists& cand, std::size_t ref_len, std::size_t target)
      : cand_(cand),
        target_(target),
        used_(ref_len, 0),
        remaining_(cand.size() + 1, 0),
        joinable_(cand.size() + 1, 0) {
    for (std::size_t i = cand.size(); i-- > 0;) {
      remaining_[i] = remaining_[i + 1] + (cand[i].empty() ? 0 : 1);
      joinable_[i] = joinable_[i + 1] + (i > 0 && can_extend(cand[i - 1], cand[i]) ? 1 : 0);
    }
  }

  void run() { visit(0); }

  bool found() const noexcept { return found_; }
  bool aborted() const noexcept { return aborted_; }
  const std::vector<Match>& best() const noexcept { return best_; }

 private:
  void visit(std::size_t i) {
    if (++nodes_ > kSearchNodeBudget) {
      aborted_ = true;
      return;
    }
    if (cur_.size() == target_) {
      if (!found_ || chunks_ < best_chunks_) {
        best_ = cur_;
        best_chunks_ = chunks_;
        found_ = true;
      }
      return;
    }
    if (i >= cand_.size()) return;
    if (cur_.size() + remaining_[i] < target_) return;
    if (found_ && chunks_ + min_new_chunks(i) >= best_chunks_) return;

    for (const auto& m : cand_[i]) {
      if (used_[m.ref]) continue;
      const bool extends = !cur_.empty() && cur_.back().pred + 1 == i && cur_.back().ref + 1 == m.ref;
      const std::size_t chunks = chunks_ + (extends ? 0 : 1);
      if (found_ && chunks >= best_chunks_) continue;
      used_[m.ref] = 1;
      cur_.push_back(m);
      const std::size_t saved = chunks_;
      chunks_ = chunks;
      visit(i + 1);
      chunks_ = saved;
      cur_.pop_back();
      used_[m.ref] = 0;
      if (aborted_) return;
    }
    visit(i + 1);
  }

  static bool can_extend(const std::vector<Match>& prev, const std::vector<Match>& next) {
    for (const auto& a : prev) {
      for (const auto& b : next) {
        if (a.ref + 1 == b.ref) return true;
      }
    }
    return false;
  }

  // Every further match opens a chunk unless it continues the previous one, which needs a
  // position whose candidates can follow its predecessor's.
  std::size_t min_new_chunks(std::size_t i) const {
    const std::size_t needed = target_ - cur_.size();
    return needed > joinable_[i] ? needed - joinable_[i] : 0;
  }

  const CandidateLists& cand_;
  std::size_t target_;
  std::vector<char> used_;
  std::vector<std::size_t> remaining_;
  std::vector<std::size_t> joinable_;  // positions i.. that could continue a chunk
  std::vector<Match> cur_;
  std::size_t chunks_ = 0;
  std::vector<Match> best_;
  std::size_t best_chunks_ = kNone;
  bool found_ = false;
  bool aborted_ = false;
  std::size_t nodes_ = 0;
};

}  // namespace

std::string_view matcher_name(MatcherType t) {
  switch (t) {
    case MatcherType::kExact:
      return "exact";
    case MatcherType::kStem:
      return "stem";
    case MatcherType::kSynonym:
      return "synonym";
  }
  return "unknown";
}

double MatcherWeights::operator[](MatcherType t) const noexcept {
  switch (t) {
    case MatcherType::kExact:
      return exact;
    case MatcherType::kStem:
      return stem;
    case MatcherType::kSynonym:
      return synonym;
  }
  return 0.0;
}

MatchSet match_unigrams(const TokenSeq& pred, const TokenSeq& ref, const MeteorParams& params,
                        const SynonymLexicon& lex) {
  MatchSet ms;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = 0; j < ref.size(); ++j) {
      const Token& p = pred[i];
      const Token& r = ref[j];
      if (p.surface == r.surface) {
        ms.candidates.push_back({i, j, MatcherType::kExact});
      } else if (params.stem_enabled && p.stem == r.stem) {
        ms.candidates.push_back({i, j, MatcherType::kStem});
      } else if (params.synonym_enabled && lex.synonymous(p.surface, r.surface)) {
        ms.candidates.push_back({i, j, MatcherType::kSynonym});
      }
    }
  }
  return ms;
}

std::size_t count_chunks(const std::vector<Match>& matches) {
  std::size_t chunks = 0;
  for (std::size_t k = 0; k < matches.size(); ++k) {
    const bool extends = k > 0 && matches[k].pred == matches[k - 1].pred + 1 &&
                         matches[k].ref == matches[k - 1].ref + 1;
    if (!extends) ++chunks;
  }
  return chunks;
}

Alignment align(const MatchSet& ms, std::size_t pred_len, std::size_t ref_len) {
  const CandidateLists cand = group_by_pred(ms, pred_len, ref_len);
  const std::size_t active =
      static_cast<std::size_t>(std::count_if(cand.begin(), cand.end(), [](const auto& l) { return !l.empty(); }));

  Alignment a;
  if (active > kExactAlignLimit) {
    a.matches = heuristic_alignment(cand, ref_len);
    a.exact = false;
  } else {
    ExactSearch search(cand, ref_len, max_cardinality(cand, ref_len));
    search.run();
    if (search.found()) {
      a.matches = search.best();
      a.exact = !search.aborted();
    } else {
      a.matches = heuristic_alignment(cand, ref_len);
      a.exact = false;
    }
  }
  a.chunk_count = count_chunks(a.matches);
  return a;
}

Prf precision_recall_f(const Alignment& a, const MeteorParams& params, std::size_t pred_len,
                       std::size_t ref_len) {
  if (pred_len == 0 || ref_len == 0) {
    throw InvalidInputError("precision/recall need non-empty prediction and reference");
  }
  Prf prf;
  prf.pred_len = pred_len;
  prf.ref_len = ref_len;
  for (const auto& m : a.matches) prf.weighted_matches += params.weights[m.type];
  prf.precision = prf.weighted_matches / static_cast<double>(pred_len);
  prf.recall = prf.weighted_matches / static_cast<double>(ref_len);
  const double p = prf.precision;
  const double r = prf.recall;
  if (p == 0.0 && r == 0.0) {
    prf.f_score = 0.0;
  } else if (p == r) {
    prf.f_score = p;  // exact; avoids alpha + (1 - alpha) rounding
  } else {
    prf.f_score = p * r / (params.alpha * p + (1.0 - params.alpha) * r);
  }
  return prf;
}

double frag_penalty(const Alignment& a, const MeteorParams& params, bool identical) {
  const std::size_t matched = a.matches.size();
  if (matched == 0) return 0.0;
  if (params.frag_mode == FragMode::kLogMnext && identical) return 0.0;
  std::size_t chunks = a.chunk_count;
  switch (params.word_order) {
    case WordOrder::kAligned:
      break;
    case WordOrder::kSingleChunk:
      chunks = 1;
      break;
    case WordOrder::kNoPenalty:
      return 0.0;
  }
  const double ratio = static_cast<double>(chunks) / static_cast<double>(matched);
  return params.beta * std::pow(ratio, params.gamma);
}

AlignScore align_score(const TokenSeq& pred, const TokenSeq& ref, const MeteorParams& params,
                       const SynonymLexicon& lex) {
  params.validate();
  AlignScore out;
  if (pred.empty() || ref.empty()) {
    out.degenerate = true;
    out.identical = pred.empty() && ref.empty();
    return out;
  }
  out.identical = pred.same_forms(ref);
  out.alignment = align(match_unigrams(pred, ref, params, lex), pred.size(), ref.size());
  out.prf = precision_recall_f(out.alignment, params, pred.size(), ref.size());
  out.penalty = frag_penalty(out.alignment, params, out.identical);
  out.score = out.prf.f_score * (1.0 - out.penalty);
  return out;
}

AlignScore meteor(const TokenSeq& pred, const TokenSeq& ref, const SynonymLexicon& lex,
                  const MeteorParams& params) {
  return align_score(pred, ref, params, lex);
}

AlignScore meteor_next(const TokenSeq& pred, const TokenSeq& ref, const SynonymLexicon& lex,
                       const MeteorParams& params) {
  return align_score(pred, ref, params, lex);
}

AlignScore log_mnext(std::string_view pred, std::string_view ref, const SynonymLexicon& lex,
                     MeteorParams params) {
  params.frag_mode = FragMode::kLogMnext;
  const PrepConfig prep{.lowercase = true, .strip_punctuation = true};
  return align_score(preprocess(pred, prep), preprocess(ref, prep), params, lex);
}

}  // namespace cmgeval
