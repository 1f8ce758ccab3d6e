#pragma once

#include <array>
#include <cstddef>

#include "cmgeval/text_prep.hpp"

namespace cmgeval {

/// Clipped k-gram match count and number of k-grams in the prediction.
struct NgramCount {
  std::size_t matched = 0;
  std::size_t total = 0;

  friend bool operator==(const NgramCount&, const NgramCount&) = default;
};

inline constexpr int kBleuOrder = 4;

/// Per-order counts for k = 1..4 (index k-1) plus both lengths.
struct NgramStats {
  std::array<NgramCount, kBleuOrder> orders{};
  std::size_t pred_len = 0;
  std::size_t ref_len = 0;
};

enum class Smoothing {
  kNone,  ///< p_k = m_k / l_k
  kNorm,  ///< p_k = (m_k + 1) / (l_k + 1)
  kCc,    ///< neighbour-averaged m_k, then (optionally) the +1 of kNorm
};

struct BleuConfig {
  std::array<double, kBleuOrder> weights{0.25, 0.25, 0.25, 0.25};
  Smoothing smoothing = Smoothing::kNone;
  bool use_brevity_penalty = true;

  // kCc only. m_0 = m_1 + cc_lower_offset; m_5 = m_4 when cc_upper_repeat, else 0.
  bool cc_add_one = true;
  double cc_lower_offset = 1.0;
  bool cc_upper_repeat = true;

  /// Throws InvalidInputError unless all weights are positive and sum to 1.
  void validate() const;
};

/// m_k = sum over distinct k-grams g of min(count_pred(g), count_ref(g)); l_k = |pred| - k + 1.
NgramCount clipped_matches(const TokenSeq& pred, const TokenSeq& ref, int k);

NgramStats ngram_stats(const TokenSeq& pred, const TokenSeq& ref);

/// min(1, exp(1 - ref_len / pred_len)); 0 for an empty prediction.
double brevity_penalty(std::size_t pred_len, std::size_t ref_len);

/// Sentence-level BLEU4 with optional smoothing. Empty prediction scores 0.
double bleu4(const TokenSeq& pred, const TokenSeq& ref, const BleuConfig& cfg = {});
double bleu4(const NgramStats& stats, const BleuConfig& cfg = {});

/// Recall-oriented n-gram overlap; throws UndefinedScoreError when ref has no n-gram.
double rouge_n(const TokenSeq& pred, const TokenSeq& ref, int n);

enum class RougeLMode { kRecall, kF1 };

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b);

/// LCS / |ref| (kRecall) or the balanced LCS F-measure (kF1).
double rouge_l(const TokenSeq& pred, const TokenSeq& ref, RougeLMode mode = RougeLMode::kRecall);

}  // namespace cmgeval
