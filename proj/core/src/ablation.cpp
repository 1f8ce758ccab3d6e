#include "cmgeval/ablation.hpp"

#include <limits>
#include <utility>

#include "cmgeval/edit_metrics.hpp"
#include "cmgeval/error.hpp"
#include "cmgeval/parallel.hpp"
#include "cmgeval/stats.hpp"

namespace cmgeval {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_ascii_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ascii_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string normalize_name(std::string_view name) {
  std::string s = ascii_lower(name);
  for (auto& c : s) {
    if (c == '-') c = '_';
  }
  return s;
}

bool is_bleu_family(MetricId id) {
  return id == MetricId::kBleu4 || id == MetricId::kBleuNorm || id == MetricId::kBleuCc;
}

bool is_meteor_family(MetricId id) {
  return id == MetricId::kMeteor || id == MetricId::kMeteorNext || id == MetricId::kLogMnext;
}

MeteorParams adjust(MeteorParams p, const FactorSet& f, const ScoringContext& ctx) {
  if (!f.semantics) {
    p.stem_enabled = false;
    p.synonym_enabled = false;
  }
  if (!f.word_order) p.word_order = ctx.word_order_off;
  return p;
}

// Resets factors the metric ignores, so equivalent configurations compare equal.
FactorSet effective(MetricId id, FactorSet f) {
  const FactorSet d = default_factors(id);
  if (!factor_applies(id, Factor::kLength)) f.length = d.length;
  if (!factor_applies(id, Factor::kWordOrder)) f.word_order = d.word_order;
  if (!factor_applies(id, Factor::kSemantics)) f.semantics = d.semantics;
  if (!factor_applies(id, Factor::kSmoothing)) f.smoothing = d.smoothing;
  return f;
}

FactorSet with_switch(FactorSet f, Factor factor, bool on) {
  switch (factor) {
    case Factor::kLength:
      f.length = on;
      break;
    case Factor::kWordOrder:
      f.word_order = on;
      break;
    case Factor::kSemantics:
      f.semantics = on;
      break;
    case Factor::kCaseFolding:
      f.case_folding = on;
      break;
    case Factor::kPunctuation:
      f.punctuation_removal = on;
      break;
    case Factor::kSmoothing:
      f.smoothing = on ? Smoothing::kNorm : Smoothing::kNone;
      break;
  }
  return f;
}

std::optional<bool> parse_switch(std::string_view v) {
  const std::string s = ascii_lower(v);
  if (s == "on" || s == "true" || s == "1" || s == "yes") return true;
  if (s == "off" || s == "false" || s == "0" || s == "no") return false;
  return std::nullopt;
}

// Correlations of one metric, memoized by effective FactorSet.
class CorrelationCache {
 public:
  CorrelationCache(MetricId id, std::span<const AnnotatedPair> pairs, std::span<const double> human,
                   const ScoringContext& ctx, std::size_t jobs)
      : id_(id), pairs_(pairs), human_(human), ctx_(ctx), jobs_(jobs) {}

  std::optional<double> get(const FactorSet& requested) {
    const FactorSet f = effective(id_, requested);
    for (const auto& [key, value] : memo_) {
      if (key == f) return value;
    }
    std::vector<double> scores(pairs_.size());
    parallel_for(pairs_.size(), jobs_, [&](std::size_t i) {
      const auto& p = pairs_[i];
      scores[i] = oriented_for_ranking(id_, try_score(p.prediction, p.reference, id_, f, ctx_));
    });
    std::optional<double> rho;
    try {
      rho = spearman(scores, human_).rho;
    } catch (const UndefinedCorrelationError&) {
      rho = std::nullopt;
    }
    memo_.emplace_back(f, rho);
    return rho;
  }

 private:
  MetricId id_;
  std::span<const AnnotatedPair> pairs_;
  std::span<const double> human_;
  const ScoringContext& ctx_;
  std::size_t jobs_;
  std::vector<std::pair<FactorSet, std::optional<double>>> memo_;
};

}  // namespace

std::string_view metric_name(MetricId id) {
  switch (id) {
    case MetricId::kBleu4:
      return "BLEU4";
    case MetricId::kBleuNorm:
      return "BLEUNORM";
    case MetricId::kBleuCc:
      return "BLEUCC";
    case MetricId::kMeteor:
      return "METEOR";
    case MetricId::kMeteorNext:
      return "METEOR_NEXT";
    case MetricId::kRouge1:
      return "ROUGE1";
    case MetricId::kRouge2:
      return "ROUGE2";
    case MetricId::kRougeL:
      return "ROUGEL";
    case MetricId::kTer:
      return "TER";
    case MetricId::kLogMnext:
      return "LOG_MNEXT";
  }
  return "UNKNOWN";
}

std::optional<MetricId> parse_metric(std::string_view name) {
  std::string n = normalize_name(name);
  if (n == "meteornext") n = "meteor_next";
  if (n == "logmnext") n = "log_mnext";
  if (n == "rouge_1") n = "rouge1";
  if (n == "rouge_2") n = "rouge2";
  if (n == "rouge_l") n = "rougel";
  for (const MetricId id : kAllMetrics) {
    if (ascii_lower(metric_name(id)) == n) return id;
  }
  return std::nullopt;
}

bool higher_is_better(MetricId id) { return id != MetricId::kTer; }

std::string_view factor_name(Factor f) {
  switch (f) {
    case Factor::kLength:
      return "length";
    case Factor::kWordOrder:
      return "word_order";
    case Factor::kSemantics:
      return "semantics";
    case Factor::kCaseFolding:
      return "case_folding";
    case Factor::kPunctuation:
      return "punctuation";
    case Factor::kSmoothing:
      return "smoothing";
  }
  return "unknown";
}

std::optional<Factor> parse_factor(std::string_view name) {
  const std::string n = normalize_name(name);
  if (n == "case") return Factor::kCaseFolding;
  if (n == "punctuation_removal") return Factor::kPunctuation;
  for (const Factor f : kFactors) {
    if (factor_name(f) == n) return f;
  }
  return std::nullopt;
}

FactorSet default_factors(MetricId id) {
  FactorSet f;
  if (id == MetricId::kMeteor || id == MetricId::kMeteorNext) {
    f.case_folding = true;
  } else if (id == MetricId::kLogMnext) {
    f.case_folding = true;
    f.punctuation_removal = true;
  }
  return f;
}

bool factor_applies(MetricId id, Factor f) {
  switch (f) {
    case Factor::kLength:
      return is_bleu_family(id);
    case Factor::kWordOrder:
    case Factor::kSemantics:
      return is_meteor_family(id);
    case Factor::kCaseFolding:
    case Factor::kPunctuation:
      return true;
    case Factor::kSmoothing:
      return id == MetricId::kBleu4;
  }
  return false;
}

PrepConfig prep_config(const FactorSet& f) {
  return PrepConfig{.lowercase = f.case_folding, .strip_punctuation = f.punctuation_removal};
}

FactorSet apply_factor_overrides(FactorSet base, std::string_view spec) {
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (trim(item).empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidInputError("factor override '" + std::string(item) + "' is not name=value");
    }
    const std::string_view name = trim(item.substr(0, eq));
    const std::string_view value = trim(item.substr(eq + 1));
    const auto factor = parse_factor(name);
    if (!factor) throw InvalidInputError("unknown factor '" + std::string(name) + "'");
    if (*factor == Factor::kSmoothing) {
      const std::string v = ascii_lower(value);
      if (v == "off" || v == "none") {
        base.smoothing = Smoothing::kNone;
      } else if (v == "norm") {
        base.smoothing = Smoothing::kNorm;
      } else if (v == "cc") {
        base.smoothing = Smoothing::kCc;
      } else {
        throw InvalidInputError("smoothing must be one of off, norm, cc");
      }
      continue;
    }
    const auto on = parse_switch(value);
    if (!on) throw InvalidInputError("factor value must be on or off, got '" + std::string(value) + "'");
    base = with_switch(base, *factor, *on);
  }
  return base;
}

double score_tokens(MetricId id, const TokenSeq& pred, const TokenSeq& ref, const FactorSet& f,
                    const ScoringContext& ctx) {
  BleuConfig bleu = ctx.bleu;
  bleu.use_brevity_penalty = f.length;
  switch (id) {
    case MetricId::kBleu4:
      bleu.smoothing = f.smoothing;
      return bleu4(pred, ref, bleu);
    case MetricId::kBleuNorm:
      bleu.smoothing = Smoothing::kNorm;
      return bleu4(pred, ref, bleu);
    case MetricId::kBleuCc:
      bleu.smoothing = Smoothing::kCc;
      return bleu4(pred, ref, bleu);
    case MetricId::kMeteor:
      return align_score(pred, ref, adjust(ctx.meteor, f, ctx), *ctx.lexicon).score;
    case MetricId::kMeteorNext:
      return align_score(pred, ref, adjust(ctx.meteor_next, f, ctx), *ctx.lexicon).score;
    case MetricId::kLogMnext: {
      MeteorParams p = adjust(ctx.meteor_next, f, ctx);
      p.frag_mode = FragMode::kLogMnext;
      return align_score(pred, ref, p, *ctx.lexicon).score;
    }
    case MetricId::kRouge1:
      return rouge_n(pred, ref, 1);
    case MetricId::kRouge2:
      return rouge_n(pred, ref, 2);
    case MetricId::kRougeL:
      return rouge_l(pred, ref, ctx.rouge_l_mode);
    case MetricId::kTer:
      return ter(pred, ref);
  }
  throw InvalidInputError("unknown metric");
}

double score_with_factors(std::string_view pred, std::string_view ref, MetricId id, const FactorSet& f,
                          const ScoringContext& ctx) {
  const PrepConfig prep = prep_config(f);
  return score_tokens(id, preprocess(pred, prep), preprocess(ref, prep), f, ctx);
}

std::optional<double> try_score(std::string_view pred, std::string_view ref, MetricId id,
                                const FactorSet& f, const ScoringContext& ctx) {
  try {
    return score_with_factors(pred, ref, id, f, ctx);
  } catch (const InvalidReferenceError&) {
    return std::nullopt;
  } catch (const UndefinedScoreError&) {
    return std::nullopt;
  }
}

double oriented_for_ranking(MetricId id, const std::optional<double>& score) {
  if (!score) return -std::numeric_limits<double>::infinity();
  return higher_is_better(id) ? *score : -*score;
}

AblationGrid ablation_table(std::span<const AnnotatedPair> pairs, std::span<const MetricId> metrics,
                            const ScoringContext& ctx, std::size_t jobs) {
  if (pairs.size() < kMinCorrelationSamples) {
    throw ValidationError("ablation needs at least 3 annotated pairs, got " + std::to_string(pairs.size()));
  }
  std::vector<double> human;
  human.reserve(pairs.size());
  for (const auto& p : pairs) human.push_back(p.mean_score);

  AblationGrid grid;
  grid.pair_count = pairs.size();
  for (const MetricId id : metrics) {
    CorrelationCache cache(id, pairs, human, ctx, jobs);
    const FactorSet defaults = default_factors(id);
    AblationRow row{id, cache.get(defaults), {}};
    for (const Factor factor : kFactors) {
      AblationCell cell{id, factor, std::nullopt, {}};
      if (factor == Factor::kSmoothing && factor_applies(id, factor)) {
        FactorSet off = defaults, norm = defaults, cc = defaults;
        off.smoothing = Smoothing::kNone;
        norm.smoothing = Smoothing::kNorm;
        cc.smoothing = Smoothing::kCc;
        cell.without_value = cache.get(off);
        cell.with_values = {cache.get(norm), cache.get(cc)};
      } else {
        cell.without_value = cache.get(with_switch(defaults, factor, false));
        cell.with_values = {cache.get(with_switch(defaults, factor, true))};
      }
      row.cells.push_back(std::move(cell));
    }
    grid.rows.push_back(std::move(row));
  }
  return grid;
}

Table ablation_report(const AblationGrid& grid) {
  Table t;
  t.header = {"metric", "factor", "without", "with", "clean"};
  for (const auto& row : grid.rows) {
    for (const auto& cell : row.cells) {
      std::string with;
      for (std::size_t i = 0; i < cell.with_values.size(); ++i) {
        if (i > 0) with += ';';
        with += format_optional(cell.with_values[i], kCorrelationDecimals);
      }
      t.rows.push_back({std::string(metric_name(row.metric)), std::string(factor_name(cell.factor)),
                        format_optional(cell.without_value, kCorrelationDecimals), with,
                        format_optional(row.clean, kCorrelationDecimals)});
    }
  }
  return t;
}

}  // namespace cmgeval
