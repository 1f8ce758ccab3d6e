#include "cmgeval/ngram_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string_view>
#include <vector>

#include "cmgeval/error.hpp"

namespace cmgeval {

namespace {

using Ngram = std::vector<std::string_view>;

std::map<Ngram, std::size_t> count_ngrams(const TokenSeq& seq, std::size_t k) {
  std::map<Ngram, std::size_t> counts;
  if (seq.size() < k) return counts;
  for (std::size_t i = 0; i + k <= seq.size(); ++i) {
    Ngram g;
    g.reserve(k);
    for (std::size_t j = i; j < i + k; ++j) g.emplace_back(seq[j].surface);
    ++counts[std::move(g)];
  }
  return counts;
}

void require_reference(std::size_t ref_len) {
  if (ref_len == 0) throw InvalidReferenceError("reference is empty");
}

}  // namespace

void BleuConfig::validate() const {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw InvalidInputError("BLEU weights must be strictly positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidInputError("BLEU weights must sum to 1");
  if (cc_lower_offset < 0.0) throw InvalidInputError("BLEUCC lower offset must be >= 0");
}

NgramCount clipped_matches(const TokenSeq& pred, const TokenSeq& ref, int k) {
  if (k < 1) throw InvalidInputError("n-gram order must be >= 1");
  const auto order = static_cast<std::size_t>(k);
  NgramCount out;
  if (pred.size() < order) return out;
  out.total = pred.size() - order + 1;
  const auto ref_counts = count_ngrams(ref, order);
  for (const auto& [g, c] : count_ngrams(pred, order)) {
    const auto it = ref_counts.find(g);
    if (it != ref_counts.end()) out.matched += std::min(c, it->second);
  }
  return out;
}

NgramStats ngram_stats(const TokenSeq& pred, const TokenSeq& ref) {
  NgramStats s;
  s.pred_len = pred.size();
  s.ref_len = ref.size();
  for (int k = 1; k <= kBleuOrder; ++k) s.orders[k - 1] = clipped_matches(pred, ref, k);
  return s;
}

double brevity_penalty(std::size_t pred_len, std::size_t ref_len) {
  require_reference(ref_len);
  if (pred_len == 0) return 0.0;
  if (pred_len >= ref_len) return 1.0;
  return std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(pred_len));
}

double bleu4(const NgramStats& stats, const BleuConfig& cfg) {
  cfg.validate();
  require_reference(stats.ref_len);
  if (stats.pred_len == 0) return 0.0;

  std::array<double, kBleuOrder> precision{};
  switch (cfg.smoothing) {
    case Smoothing::kNone:
      for (int k = 0; k < kBleuOrder; ++k) {
        const auto& o = stats.orders[k];
        if (o.total == 0 || o.matched == 0) return 0.0;
        precision[k] = static_cast<double>(o.matched) / static_cast<double>(o.total);
      }
      break;
    case Smoothing::kNorm:
      for (int k = 0; k < kBleuOrder; ++k) {
        const auto& o = stats.orders[k];
        precision[k] = static_cast<double>(o.matched + 1) / static_cast<double>(o.total + 1);
      }
      break;
    case Smoothing::kCc: {
      // m[0] and m[5] are the boundary orders around the real m[1..4].
      std::array<double, kBleuOrder + 2> m{};
      for (int k = 0; k < kBleuOrder; ++k) m[k + 1] = static_cast<double>(stats.orders[k].matched);
      m[0] = m[1] + cfg.cc_lower_offset;
      m[kBleuOrder + 1] = cfg.cc_upper_repeat ? m[kBleuOrder] : 0.0;
      for (int k = 1; k <= kBleuOrder; ++k) {
        const double total = static_cast<double>(stats.orders[k - 1].total);
        // A smoothed count can never exceed the number of predicted k-grams.
        const double smoothed = std::min((m[k - 1] + m[k] + m[k + 1]) / 3.0, total);
        if (cfg.cc_add_one) {
          precision[k - 1] = (smoothed + 1.0) / (total + 1.0);
        } else {
          if (total == 0.0 || smoothed == 0.0) return 0.0;
          precision[k - 1] = smoothed / total;
        }
      }
      break;
    }
  }

  double log_sum = 0.0;
  for (int k = 0; k < kBleuOrder; ++k) log_sum += cfg.weights[k] * std::log(precision[k]);
  const double bp = cfg.use_brevity_penalty ? brevity_penalty(stats.pred_len, stats.ref_len) : 1.0;
  return std::clamp(bp * std::exp(log_sum), 0.0, 1.0);
}

double bleu4(const TokenSeq& pred, const TokenSeq& ref, const BleuConfig& cfg) {
  require_reference(ref.size());
  return bleu4(ngram_stats(pred, ref), cfg);
}

double rouge_n(const TokenSeq& pred, const TokenSeq& ref, int n) {
  if (n < 1) throw InvalidInputError("ROUGE-n order must be >= 1");
  const auto order = static_cast<std::size_t>(n);
  if (ref.size() < order) {
    throw UndefinedScoreError("ROUGE-" + std::to_string(n) + " undefined: reference has " +
                              std::to_string(ref.size()) + " tokens");
  }
  const double ref_total = static_cast<double>(ref.size() - order + 1);
  // Clipped counting is symmetric, so matches of pred against ref equal those of ref against pred.
  return static_cast<double>(clipped_matches(pred, ref, n).matched) / ref_total;
}

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1].surface == b[j - 1].surface ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double rouge_l(const TokenSeq& pred, const TokenSeq& ref, RougeLMode mode) {
  require_reference(ref.size());
  const auto lcs = static_cast<double>(lcs_length(pred, ref));
  const double recall = lcs / static_cast<double>(ref.size());
  if (mode == RougeLMode::kRecall) return recall;
  if (lcs == 0.0) return 0.0;
  const double precision = lcs / static_cast<double>(pred.size());
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace cmgeval
