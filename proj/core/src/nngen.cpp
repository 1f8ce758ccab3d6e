#include "cmgeval/nngen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cmgeval/error.hpp"
#include "cmgeval/ngram_metrics.hpp"
#include "cmgeval/text_prep.hpp"

namespace cmgeval {

namespace {

constexpr PrepConfig kDiffPrep{.lowercase = true, .strip_punctuation = false};

std::size_t squared_norm(const BowVector& v) {
  std::size_t s = 0;
  for (const auto& [term, count] : v) s += count * count;
  return s;
}

// Integer dot product and norms keep every route to a similarity bit-identical.
double cosine_from(std::size_t dot, std::size_t norm_a, std::size_t norm_b) {
  if (norm_a == 0 || norm_b == 0) return 0.0;
  // One rounded sqrt, so identical vectors give exactly 1.
  const double denom = std::sqrt(static_cast<double>(norm_a) * static_cast<double>(norm_b));
  return std::min(1.0, static_cast<double>(dot) / denom);
}

}  // namespace

BowVector bow_vector(std::string_view diff) {
  BowVector v;
  for (const auto& t : preprocess(diff, kDiffPrep)) ++v[t.surface];
  return v;
}

double cosine(const BowVector& a, const BowVector& b) {
  std::size_t dot = 0;
  const BowVector& small = a.size() <= b.size() ? a : b;
  const BowVector& large = a.size() <= b.size() ? b : a;
  for (const auto& [term, count] : small) {
    if (const auto it = large.find(term); it != large.end()) dot += count * it->second;
  }
  return cosine_from(dot, squared_norm(a), squared_norm(b));
}

RetrievalIndex::RetrievalIndex(std::span<const CommitRecord> training)
    : records_(training.begin(), training.end()) {
  vectors_.reserve(records_.size());
  squared_norms_.reserve(records_.size());
  for (std::size_t r = 0; r < records_.size(); ++r) {
    BowVector v = bow_vector(records_[r].diff);
    for (const auto& [term, count] : v) {
      const auto [it, inserted] = vocab_.try_emplace(term, postings_.size());
      if (inserted) postings_.emplace_back();
      postings_[it->second].push_back({r, count});
    }
    squared_norms_.push_back(squared_norm(v));
    vectors_.push_back(std::move(v));
  }
}

std::vector<double> RetrievalIndex::similarities(const BowVector& query) const {
  std::vector<std::size_t> dots(records_.size(), 0);
  for (const auto& [term, count] : query) {
    const auto it = vocab_.find(term);
    if (it == vocab_.end()) continue;
    for (const auto& p : postings_[it->second]) dots[p.record] += count * p.count;
  }
  const std::size_t qn = squared_norm(query);
  std::vector<double> sims(records_.size());
  for (std::size_t r = 0; r < records_.size(); ++r) sims[r] = cosine_from(dots[r], qn, squared_norms_[r]);
  return sims;
}

Retrieval generate(std::string_view query_diff, const RetrievalIndex& index, std::size_t k) {
  if (index.empty()) throw InvalidInputError("retrieval index is empty");
  if (k == 0) throw InvalidInputError("k must be >= 1");

  const auto sims = index.similarities(bow_vector(query_diff));
  Retrieval out;
  if (std::all_of(sims.begin(), sims.end(), [](double s) { return s == 0.0; })) {
    out.message = index.record(0).message;
    out.provenance = index.record(0).id;
    out.zero_similarity = true;
    return out;
  }

  std::vector<std::size_t> order(index.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t top = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(top), order.end(),
                    [&](std::size_t a, std::size_t b) { return sims[a] != sims[b] ? sims[a] > sims[b] : a < b; });

  const TokenSeq query = preprocess(query_diff, kDiffPrep);
  const BleuConfig bleu{.smoothing = Smoothing::kNorm};
  std::size_t best = order[0];
  double best_bleu = -1.0;
  for (std::size_t n = 0; n < top; ++n) {
    const std::size_t r = order[n];
    const TokenSeq candidate = preprocess(index.record(r).diff, kDiffPrep);
    const double b = candidate.empty() ? 0.0 : bleu4(query, candidate, bleu);
    if (b > best_bleu) {
      best_bleu = b;
      best = r;
    }
  }
  out.message = index.record(best).message;
  out.provenance = index.record(best).id;
  out.record_index = best;
  out.similarity = sims[best];
  return out;
}

}  // namespace cmgeval
