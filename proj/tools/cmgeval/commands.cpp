#include "cmgeval/commands.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "cmgeval/ablation.hpp"
#include "cmgeval/corpus_io.hpp"
#include "cmgeval/csv.hpp"
#include "cmgeval/error.hpp"
#include "cmgeval/nngen.hpp"
#include "cmgeval/parallel.hpp"
#include "cmgeval/stats.hpp"

namespace cmgeval::cli {

namespace {

// Owns a loaded lexicon when one was requested; otherwise points at the bundled list.
struct Resources {
  std::optional<SynonymLexicon> owned_lexicon;
  ScoringContext ctx;
};

void load_resources(const RunConfig& cfg, Resources& res) {
  std::filesystem::path syn = cfg.synonyms;
  if (syn.empty()) {
    if (const char* env = std::getenv(kSynonymsEnv); env != nullptr && *env != '\0') syn = env;
  }
  if (!syn.empty()) {
    res.owned_lexicon = load_synonyms(syn);
    res.ctx.lexicon = &*res.owned_lexicon;
  }
  if (!cfg.params.empty()) res.ctx.meteor_next = load_meteor_params(cfg.params);
}

std::vector<MetricId> resolve_metrics(const std::vector<std::string>& names,
                                      std::span<const MetricId> fallback) {
  std::vector<MetricId> out;
  for (const auto& raw : names) {
    std::stringstream ss(raw);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      if (ascii_lower(name) == "all") {
        out.insert(out.end(), kAllMetrics.begin(), kAllMetrics.end());
        continue;
      }
      const auto id = parse_metric(name);
      if (!id) throw ValidationError("unknown metric '" + name + "'");
      out.push_back(*id);
    }
  }
  if (out.empty()) out.assign(fallback.begin(), fallback.end());
  // drop repeats, keep first-seen order
  std::vector<MetricId> unique;
  for (const MetricId id : out) {
    if (std::find(unique.begin(), unique.end(), id) == unique.end()) unique.push_back(id);
  }
  return unique;
}

void emit(const std::string& text, const std::filesystem::path& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  f.flush();
  if (!f) throw IoError("write failure on " + path.string());
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

FactorSet factors_for(MetricId id, const RunConfig& cfg) {
  try {
    return apply_factor_overrides(default_factors(id), cfg.factors);
  } catch (const InvalidInputError& e) {
    throw ValidationError(std::string("--factors: ") + e.what());
  }
}

constexpr std::array<MetricId, 1> kDefaultScoreMetric = {MetricId::kLogMnext};

struct ScoreColumns {
  std::vector<MetricId> metrics;
  std::vector<std::vector<std::optional<double>>> values;  // [metric][pair]
};

ScoreColumns score_pairs(std::span<const EvalPair> pairs, const std::vector<MetricId>& metrics,
                         const RunConfig& cfg, const ScoringContext& ctx) {
  ScoreColumns cols{metrics, {}};
  for (const MetricId id : metrics) {
    const FactorSet f = factors_for(id, cfg);
    std::vector<std::optional<double>> v(pairs.size());
    parallel_for(pairs.size(), cfg.jobs, [&](std::size_t i) {
      v[i] = try_score(pairs[i].prediction, pairs[i].reference, id, f, ctx);
    });
    cols.values.push_back(std::move(v));
  }
  return cols;
}

std::unordered_map<std::string, std::vector<std::optional<double>>> read_score_file(
    const std::filesystem::path& path, std::vector<std::string>& columns, std::vector<std::string>& ids) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());

  std::vector<std::vector<std::string>> rows;
  const int first = in.peek();
  if (first == '{' || first == '[') {
    nlohmann::ordered_json doc;
    try {
      doc = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(path.string() + ": malformed structured scores: " + e.what());
    }
    const auto& records = doc.is_object() ? doc.at("scores") : doc;
    std::vector<std::string> header;
    for (const auto& rec : records) {
      if (header.empty()) {
        for (const auto& [k, v] : rec.items()) header.push_back(k);
        rows.push_back(header);
      }
      std::vector<std::string> row;
      for (const auto& h : header) {
        const auto& v = rec.at(h);
        row.push_back(v.is_null() ? std::string(kNotAvailable)
                                  : v.is_string() ? v.get<std::string>() : v.dump());
      }
      rows.push_back(std::move(row));
    }
  } else {
    rows = read_csv_block(in);
  }
  if (rows.empty()) throw ValidationError(path.string() + ": no score table");
  const auto& header = rows.front();
  if (header.empty() || header[0] != "id" || header.size() < 2) {
    throw ValidationError(path.string() + ": score table header must be id,<metric>...", 1);
  }
  columns.assign(header.begin() + 1, header.end());

  std::unordered_map<std::string, std::vector<std::optional<double>>> by_id;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t line = r + 1;
    if (row.size() != header.size()) {
      throw ValidationError(path.string() + ":" + std::to_string(line) + ": expected " +
                                std::to_string(header.size()) + " cells",
                            line);
    }
    std::vector<std::optional<double>> values;
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (row[c] == kNotAvailable) {
        values.emplace_back(std::nullopt);
        continue;
      }
      char* end = nullptr;
      const double v = std::strtod(row[c].c_str(), &end);
      if (row[c].empty() || end != row[c].c_str() + row[c].size()) {
        throw ValidationError(path.string() + ":" + std::to_string(line) + ": bad score '" + row[c] + "'",
                              line, row[0]);
      }
      values.emplace_back(v);
    }
    if (!by_id.emplace(row[0], std::move(values)).second) {
      throw ValidationError(path.string() + ":" + std::to_string(line) + ": duplicate id '" + row[0] + "'",
                            line, row[0]);
    }
    ids.push_back(row[0]);
  }
  return by_id;
}

}  // namespace

void cmd_score(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Resources res;
  load_resources(cfg, res);
  const auto loaded = load_pairs(cfg.pairs);
  print_warnings(loaded.warnings, err);
  const auto& pairs = loaded.records;
  const auto cols = score_pairs(pairs, resolve_metrics(cfg.metrics, kDefaultScoreMetric), cfg, res.ctx);

  Table per_pair;
  per_pair.header.emplace_back("id");
  for (const MetricId id : cols.metrics) per_pair.header.emplace_back(metric_name(id));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::vector<std::string> row{pairs[i].id};
    for (const auto& column : cols.values) row.push_back(format_optional(column[i], kCorrelationDecimals));
    per_pair.rows.push_back(std::move(row));
  }

  Table summary;
  summary.header = {"metric", "mean_percent", "scored", "undefined"};
  for (std::size_t m = 0; m < cols.metrics.size(); ++m) {
    std::vector<double> defined;
    for (const auto& v : cols.values[m]) {
      if (v) defined.push_back(*v);
    }
    const std::optional<double> mean =
        defined.empty() ? std::nullopt : std::optional<double>(corpus_mean(defined));
    summary.rows.push_back({std::string(metric_name(cols.metrics[m])), format_optional(mean, kPercentDecimals),
                            std::to_string(defined.size()), std::to_string(pairs.size() - defined.size())});
  }

  std::string text;
  if (cfg.format == ReportFormat::kTable) {
    text = render_report(per_pair, ReportFormat::kTable) + "\n" + render_report(summary, ReportFormat::kTable);
  } else {
    nlohmann::ordered_json doc;
    doc["scores"] = nlohmann::ordered_json::parse(render_report(per_pair, ReportFormat::kStructured));
    doc["summary"] = nlohmann::ordered_json::parse(render_report(summary, ReportFormat::kStructured));
    text = doc.dump(2) + "\n";
  }
  emit(text, cfg.out, out);
}

void cmd_ablate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Resources res;
  load_resources(cfg, res);
  const auto loaded = load_annotations(cfg.annotations);
  print_warnings(loaded.warnings, err);
  const auto metrics = resolve_metrics(cfg.metrics, kTableMetrics);
  const auto grid = ablation_table(loaded.records, metrics, res.ctx, cfg.jobs);
  emit(render_report(ablation_report(grid), cfg.format), cfg.out, out);
}

void cmd_correlate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.scores.empty()) throw ValidationError("correlate needs --scores");
  const auto loaded = load_annotations(cfg.annotations);
  print_warnings(loaded.warnings, err);
  std::vector<std::string> columns, score_ids;
  const auto by_id = read_score_file(cfg.scores, columns, score_ids);

  std::unordered_set<std::string> annotated;
  for (const auto& p : loaded.records) {
    if (!by_id.contains(p.id)) {
      throw ValidationError("id '" + p.id + "' is missing from " + cfg.scores.string(), std::nullopt, p.id);
    }
    annotated.insert(p.id);
  }
  for (const auto& id : score_ids) {
    if (!annotated.contains(id)) {
      throw ValidationError("id '" + id + "' is missing from " + cfg.annotations.string(), std::nullopt, id);
    }
  }

  std::vector<double> human;
  for (const auto& p : loaded.records) human.push_back(p.mean_score);

  Table t;
  t.header = {"metric", "rho", "n", "ties"};
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto metric = parse_metric(columns[c]);
    const bool negate = !cfg.raw_orientation && metric && !higher_is_better(*metric);
    std::vector<double> xs;
    for (const auto& p : loaded.records) {
      const auto& v = by_id.at(p.id)[c];
      if (!v) {
        xs.push_back(-std::numeric_limits<double>::infinity());
      } else {
        xs.push_back(negate ? -*v : *v);
      }
    }
    std::optional<double> rho;
    bool ties = false;
    try {
      const auto r = spearman(xs, human);
      rho = r.rho;
      ties = r.ties_present;
    } catch (const UndefinedCorrelationError&) {
    }
    t.rows.push_back({columns[c], format_optional(rho, kCorrelationDecimals), std::to_string(xs.size()),
                      ties ? "yes" : "no"});
  }
  emit(render_report(t, cfg.format), cfg.out, out);
}

void cmd_baseline(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Resources res;
  load_resources(cfg, res);
  const auto train = load_commit_corpus(cfg.train);
  print_warnings(train.warnings, err);
  if (train.records.empty()) throw ValidationError("training corpus " + cfg.train.string() + " is empty");
  const auto test = load_commit_corpus(cfg.test);
  print_warnings(test.warnings, err);
  if (cfg.k == 0) throw ValidationError("--k must be >= 1");

  const RetrievalIndex index(train.records);
  const auto& queries = test.records;
  std::vector<EvalPair> pairs(queries.size());
  std::vector<char> zero(queries.size(), 0);
  parallel_for(queries.size(), cfg.jobs, [&](std::size_t i) {
    const auto r = generate(queries[i].diff, index, cfg.k);
    pairs[i] = EvalPair{queries[i].id, queries[i].message, r.message};
    zero[i] = r.zero_similarity ? 1 : 0;
  });
  if (const auto n = std::count(zero.begin(), zero.end(), 1); n > 0) {
    err << "note: " << n << " test diffs shared no term with the training corpus\n";
  }

  std::ostringstream jsonl;
  write_pairs(jsonl, pairs);
  emit(jsonl.str(), cfg.out, out);

  if (!cfg.report.empty()) {
    const auto metrics = resolve_metrics(cfg.metrics, kDefaultScoreMetric);
    const auto cols = score_pairs(pairs, {metrics.front()}, cfg, res.ctx);
    std::vector<double> scores;
    std::vector<Lang> langs;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      scores.push_back(cols.values[0][i].value_or(0.0));
      langs.push_back(queries[i].lang);
    }
    const std::vector<LanguageScores> models{language_scores(cfg.model, langs, scores)};
    write_report(language_report(models), cfg.report, cfg.format);
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.subcommand == "score") {
      cmd_score(cfg, out, err);
    } else if (cfg.subcommand == "ablate") {
      cmd_ablate(cfg, out, err);
    } else if (cfg.subcommand == "correlate") {
      cmd_correlate(cfg, out, err);
    } else if (cfg.subcommand == "baseline") {
      cmd_baseline(cfg, out, err);
    } else {
      err << "error: unknown subcommand '" << cfg.subcommand << "'\n";
      return kExitValidation;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commit-message generation evaluation metrics", "cmgeval"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "table";

  auto output = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
    sub->add_option("--format", format, "table | structured")->check(CLI::IsMember({"table", "structured"}));
  };
  auto scoring = [&](CLI::App* sub) {
    output(sub);
    sub->add_option("--metric", cfg.metrics, "Metric name (repeatable, comma lists, or ALL)");
    sub->add_option("--params", cfg.params, "METEOR-NEXT parameter file (key = value)");
    sub->add_option("--synonyms", cfg.synonyms,
                    std::string("Synonym file (one synset per line); default $") + kSynonymsEnv +
                        " or the bundled list");
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* score = app.add_subcommand("score", "Score prediction/reference pairs");
  scoring(score);
  score->add_option("--pairs", cfg.pairs, "Pairs file (JSON lines: id, reference, prediction)")->required();
  score->add_option("--factors", cfg.factors, "Factor overrides, e.g. case_folding=on,punctuation=on");

  auto* ablate = app.add_subcommand("ablate", "Factor-ablation correlation grid");
  scoring(ablate);
  ablate->add_option("--annotations", cfg.annotations, "Annotated pairs file (JSON lines: id, reference, prediction, scores)")->required();

  auto* correlate = app.add_subcommand("correlate", "Spearman correlation of score columns with humans");
  output(correlate);
  correlate->add_option("--scores", cfg.scores, "Score table written by 'score'")->required();
  correlate->add_option("--annotations", cfg.annotations, "Annotated pairs file (JSON lines)")->required();
  correlate->add_flag("--raw-orientation", cfg.raw_orientation, "Do not negate lower-is-better columns");

  auto* baseline = app.add_subcommand("baseline", "Nearest-neighbour retrieval baseline");
  scoring(baseline);
  baseline->add_option("--train", cfg.train, "Training commit corpus (JSON lines)")->required();
  baseline->add_option("--test", cfg.test, "Test commit corpus (JSON lines)")->required();
  baseline->add_option("--k", cfg.k, "Neighbours re-ranked by BLEU")->check(CLI::PositiveNumber);
  baseline->add_option("--report", cfg.report, "Write a per-language percentage report here");
  baseline->add_option("--model", cfg.model, "Model name for the report row");
  baseline->add_option("--factors", cfg.factors, "Factor overrides for the report metric");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.format = *parse_report_format(format);
  return run(cfg, out, err);
}

}  // namespace cmgeval::cli
