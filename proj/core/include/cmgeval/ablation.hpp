#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmgeval/align_metrics.hpp"
#include "cmgeval/ngram_metrics.hpp"
#include "cmgeval/records.hpp"
#include "cmgeval/report.hpp"
#include "cmgeval/synonyms.hpp"
#include "cmgeval/text_prep.hpp"

namespace cmgeval {

enum class MetricId {
  kBleu4,
  kBleuNorm,
  kBleuCc,
  kMeteor,
  kMeteorNext,
  kRouge1,
  kRouge2,
  kRougeL,
  kTer,
  kLogMnext,
};

/// The nine correlation-table metrics, in table order.
inline constexpr std::array<MetricId, 9> kTableMetrics = {
    MetricId::kBleu4,  MetricId::kBleuNorm, MetricId::kBleuCc, MetricId::kMeteor, MetricId::kMeteorNext,
    MetricId::kRouge1, MetricId::kRouge2,   MetricId::kRougeL, MetricId::kTer};

/// Table metrics followed by LOG_MNEXT.
inline constexpr std::array<MetricId, 10> kAllMetrics = {
    MetricId::kBleu4,  MetricId::kBleuNorm, MetricId::kBleuCc, MetricId::kMeteor,
    MetricId::kMeteorNext, MetricId::kRouge1, MetricId::kRouge2, MetricId::kRougeL,
    MetricId::kTer,    MetricId::kLogMnext};

std::string_view metric_name(MetricId id);
/// Case-insensitive; '-' and '_' are interchangeable ("meteor-next", "Log-MNEXT", "bleunorm").
std::optional<MetricId> parse_metric(std::string_view name);
/// TER is the only metric where lower is better.
bool higher_is_better(MetricId id);

enum class Factor { kLength, kWordOrder, kSemantics, kCaseFolding, kPunctuation, kSmoothing };

inline constexpr std::array<Factor, 6> kFactors = {Factor::kLength,      Factor::kWordOrder,
                                                   Factor::kSemantics,   Factor::kCaseFolding,
                                                   Factor::kPunctuation, Factor::kSmoothing};

std::string_view factor_name(Factor f);
std::optional<Factor> parse_factor(std::string_view name);

/// Six independent switches. Factors that do not apply to a metric are ignored by it.
struct FactorSet {
  bool length = true;
  bool word_order = true;
  bool semantics = true;
  bool case_folding = false;
  bool punctuation_removal = false;
  Smoothing smoothing = Smoothing::kNone;

  friend bool operator==(const FactorSet&, const FactorSet&) = default;
};

/// Each metric's original formulation (the "Clean" configuration).
FactorSet default_factors(MetricId id);

/// Whether toggling `f` can change `id`'s score at all.
bool factor_applies(MetricId id, Factor f);

PrepConfig prep_config(const FactorSet& f);

/// Parses overrides like "case_folding=on,smoothing=norm" on top of `base`.
/// Throws InvalidInputError on unknown names or values.
FactorSet apply_factor_overrides(FactorSet base, std::string_view spec);

/// Everything shared across pairs while scoring.
struct ScoringContext {
  const SynonymLexicon* lexicon = &default_synonyms();
  MeteorParams meteor = MeteorParams::classic();
  MeteorParams meteor_next = MeteorParams::next();
  /// Weights and BLEUCC boundary options; smoothing and brevity penalty come from the FactorSet.
  BleuConfig bleu;
  RougeLMode rouge_l_mode = RougeLMode::kRecall;
  /// How METEOR-family metrics drop word order when the word_order factor is off.
  WordOrder word_order_off = WordOrder::kSingleChunk;
};

/// Scores already-preprocessed tokens; case and punctuation factors are not applied here.
double score_tokens(MetricId id, const TokenSeq& pred, const TokenSeq& ref, const FactorSet& f,
                    const ScoringContext& ctx);

/// Preprocesses per the case/punctuation factors, then score_tokens.
double score_with_factors(std::string_view pred, std::string_view ref, MetricId id, const FactorSet& f,
                          const ScoringContext& ctx);

/// score_with_factors, but an undefined score (reference emptied by preprocessing, ROUGE-n on
/// a reference shorter than n) becomes std::nullopt instead of an exception.
std::optional<double> try_score(std::string_view pred, std::string_view ref, MetricId id,
                                const FactorSet& f, const ScoringContext& ctx);

/// Orients a score for correlation: higher is always better, and an undefined score ranks
/// below every defined one.
double oriented_for_ranking(MetricId id, const std::optional<double>& score);

struct AblationCell {
  MetricId metric;
  Factor factor;
  std::optional<double> without_value;
  /// One value, or two (BLEUNorm-style then BLEUCC-style smoothing) for BLEU4 x smoothing.
  std::vector<std::optional<double>> with_values;
};

struct AblationRow {
  MetricId metric;
  std::optional<double> clean;
  std::vector<AblationCell> cells;  // one per factor, in kFactors order
};

struct AblationGrid {
  std::vector<AblationRow> rows;
  std::size_t pair_count = 0;
};

/// Spearman correlation of every metric x factor (off / on) against mean human scores, other
/// factors held at the metric's defaults. A constant score vector yields std::nullopt.
/// Throws ValidationError for fewer than 3 pairs.
AblationGrid ablation_table(std::span<const AnnotatedPair> pairs, std::span<const MetricId> metrics,
                            const ScoringContext& ctx, std::size_t jobs = 1);

/// Header "metric,factor,without,with,clean"; one row per cell; a two-valued cell joins its
/// values with ';'; missing correlations print as NA.
Table ablation_report(const AblationGrid& grid);

}  // namespace cmgeval
