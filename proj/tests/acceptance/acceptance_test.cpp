// One [PASS]/[FAIL] line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cmgeval/ablation.hpp"
#include "cmgeval/align_metrics.hpp"
#include "cmgeval/commands.hpp"
#include "cmgeval/corpus_io.hpp"
#include "cmgeval/csv.hpp"
#include "cmgeval/edit_metrics.hpp"
#include "cmgeval/ngram_metrics.hpp"
#include "cmgeval/nngen.hpp"
#include "cmgeval/stats.hpp"
#include "oracles.hpp"
#include "random_text.hpp"

namespace fs = std::filesystem;
using namespace cmgeval;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

const std::string kData = CMGEVAL_DATA_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cmgeval");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "cmgeval_acceptance";
  fs::create_directories(dir);
  return dir / name;
}

TokenSeq words(const std::vector<std::string>& w) { return make_token_seq(w); }

Outcome zero_score_reproduction() {
  Outcome o;
  const double bleu = bleu4(tokenize("added chain diagram"), tokenize("added chain of responsibility class diagram"));
  const double rouge = rouge_n(tokenize("Update change"), tokenize("Updated changes"), 1);
  const double met = meteor(tokenize("Update change"), tokenize("Updated changes"), SynonymLexicon{}).score;
  if (bleu != 0.0) o.fail("BLEU4 = " + std::to_string(bleu));
  if (rouge != 0.0) o.fail("ROUGE-1 = " + std::to_string(rouge));
  if (!(met > 0.0)) o.fail("METEOR = " + std::to_string(met));
  char buf[128];
  std::snprintf(buf, sizeof buf, "BLEU4=%g ROUGE1=%g METEOR=%.4f", bleu, rouge, met);
  if (o.ok) o.detail = buf;
  return o;
}

Outcome identity_branch() {
  Outcome o;
  testing::TextGen gen(2021);
  const auto& lex = default_synonyms();
  const auto params = MeteorParams::next();
  int multi = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string s = gen.message(1, 15);
    if (log_mnext(s, s, lex, params).score != 1.0) o.fail("log_mnext(s, s) != 1 for '" + s + "'");
    const auto t = preprocess(s, {true, true});
    if (t.size() >= 2) {
      ++multi;
      if (!(meteor_next(t, t, lex, params).score < 1.0)) o.fail("meteor_next(s, s) = 1 for '" + s + "'");
    }
  }
  if (o.ok) o.detail = "1000 strings, " + std::to_string(multi) + " with >= 2 tokens";
  return o;
}

Outcome oracle_suites() {
  Outcome o;
  testing::TextGen gen(7);
  for (int i = 0; i < 1000; ++i) {
    const auto p = gen.words(0, 8, 5);
    const auto r = gen.words(1, 8, 5);
    const double want = static_cast<double>(oracle::brute_lcs(p, r)) / static_cast<double>(r.size());
    if (rouge_l(words(p), words(r)) != want) o.fail("ROUGE-L disagrees on case " + std::to_string(i));
  }
  for (int i = 0; i < 1000; ++i) {
    const auto p = gen.words(0, 6, 4);
    const auto r = gen.words(0, 6, 4);
    if (edit_summary(words(p), words(r)).total() != oracle::recursive_edit_distance(p, r)) {
      o.fail("TER edits disagree on case " + std::to_string(i));
    }
  }
  const auto& lex = default_synonyms();
  const auto params = MeteorParams::classic();
  for (int i = 0; i < 500; ++i) {
    const auto p = words(gen.words(1, 7, 14));
    const auto r = words(gen.words(1, 7, 14));
    std::vector<std::vector<bool>> allowed(p.size(), std::vector<bool>(r.size()));
    for (std::size_t x = 0; x < p.size(); ++x) {
      for (std::size_t y = 0; y < r.size(); ++y) {
        allowed[x][y] = p[x].surface == r[y].surface || p[x].stem == r[y].stem ||
                        lex.synonymous(p[x].surface, r[y].surface);
      }
    }
    const auto best = oracle::exhaustive_alignment(allowed, r.size());
    const auto got = align(match_unigrams(p, r, params, lex), p.size(), r.size());
    if (got.matches.size() != best.matched || got.chunk_count != best.chunks) {
      o.fail("alignment not optimal on case " + std::to_string(i));
    }
  }
  if (o.ok) o.detail = "ROUGE-L 1000, TER 1000, alignment 500";
  return o;
}

Outcome spearman_correctness() {
  Outcome o;
  std::mt19937 rng(99);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 50)(rng);
    std::vector<double> xs(n), ys(n);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    std::generate(xs.begin(), xs.end(), [&] { return u(rng); });
    std::generate(ys.begin(), ys.end(), [&] { return u(rng); });
    const double rho = spearman(xs, ys).rho;
    worst = std::max(worst, std::abs(rho - oracle::closed_form_spearman(xs, ys)));
    std::vector<double> tx(n);
    std::transform(xs.begin(), xs.end(), tx.begin(), [](double x) { return std::cbrt(x) * 3.0 + 11.0; });
    if (spearman(tx, ys).rho != rho) o.fail("not invariant under a monotone transform");
  }
  if (worst > 1e-12) o.fail("closed-form gap " + std::to_string(worst));
  if (spearman(std::vector<double>{1, 2, 3}, std::vector<double>{1, 3, 2}).rho != 0.5) o.fail("[1,2,3] vs [1,3,2]");
  char buf[96];
  std::snprintf(buf, sizeof buf, "1000 vectors, max gap %.2e", worst);
  if (o.ok) o.detail = buf;
  return o;
}

Outcome ablation_contract() {
  Outcome o;
  const std::string ann = kData + "/annotations_synthetic20.jsonl";
  const auto first = cli({"ablate", "--annotations", ann});
  if (first.code != 0) {
    o.fail("ablate exited " + std::to_string(first.code) + ": " + first.err);
    return o;
  }
  for (const char* jobs : {"1", "2", "8"}) {
    if (cli({"ablate", "--annotations", ann, "--jobs", jobs}).out != first.out) {
      o.fail(std::string("output differs with --jobs ") + jobs);
    }
  }
  std::istringstream in(first.out);
  const auto rows = cli::read_csv_block(in);
  if (rows.empty() || rows[0] != std::vector<std::string>{"metric", "factor", "without", "with", "clean"}) {
    o.fail("unexpected header");
    return o;
  }
  std::vector<std::string> metrics;
  std::size_t two_valued = 0, no_change = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 5) {
      o.fail("row " + std::to_string(i) + " has " + std::to_string(row.size()) + " cells");
      continue;
    }
    if (metrics.empty() || metrics.back() != row[0]) metrics.push_back(row[0]);
    const auto id = parse_metric(row[0]);
    const auto factor = parse_factor(row[1]);
    if (!id || !factor) {
      o.fail("unknown metric/factor in row " + std::to_string(i));
      continue;
    }
    if (row[3].find(';') != std::string::npos) {
      ++two_valued;
      if (*id != MetricId::kBleu4 || *factor != Factor::kSmoothing) o.fail("unexpected two-valued cell");
    }
    if (!factor_applies(*id, *factor)) {
      ++no_change;
      if (row[2] != row[3]) o.fail("No-Change cell differs: " + row[0] + " x " + row[1]);
    }
  }
  std::vector<std::string> expected;
  for (const MetricId id : kTableMetrics) expected.emplace_back(metric_name(id));
  if (metrics != expected) o.fail("metric rows are not the nine table metrics");
  if (rows.size() != 1 + 9 * kFactors.size()) o.fail("expected 54 cells, got " + std::to_string(rows.size() - 1));
  if (two_valued != 1) o.fail("expected exactly one two-valued cell");
  if (o.ok) {
    o.detail = "9 rows x 6 factors, " + std::to_string(no_change) +
               " No-Change cells equal, identical for --jobs 1/2/8";
  }
  return o;
}

Outcome end_to_end_toy_corpus() {
  Outcome o;
  const auto preds = scratch("toy_preds.jsonl");
  const auto report = scratch("toy_report.csv");
  const auto b = cli({"baseline", "--train", kData + "/toy_commits_train.jsonl", "--test",
                      kData + "/toy_commits_test.jsonl", "--out", preds.string(), "--report", report.string()});
  if (b.code != 0) {
    o.fail("baseline exited " + std::to_string(b.code) + ": " + b.err);
    return o;
  }
  const auto s = cli({"score", "--pairs", preds.string(), "--metric", "ALL"});
  if (s.code != 0) o.fail("score exited " + std::to_string(s.code) + ": " + s.err);
  std::ifstream in(report);
  const auto rows = cli::read_csv_block(in);
  if (rows.size() != 2 || rows[0] != std::vector<std::string>{"model", "C++", "C#", "Java", "JS", "Py", "Avg"}) {
    o.fail("report is not one row per model with C++,C#,Java,JS,Py,Avg columns");
    return o;
  }
  for (std::size_t c = 1; c < rows[1].size(); ++c) {
    char* end = nullptr;
    const double v = std::strtod(rows[1][c].c_str(), &end);
    if (*end != '\0' || v < 0.0 || v > 100.0) o.fail("bad percentage '" + rows[1][c] + "'");
  }
  if (load_pairs(preds).records.size() != 40) o.fail("expected 40 predictions");
  if (o.ok) {
    std::string line;
    for (const auto& cell : rows[1]) line += (line.empty() ? "" : ",") + cell;
    o.detail = line;
  }
  return o;
}

Outcome retrieval_sanity() {
  Outcome o;
  const auto train = load_commit_corpus(kData + "/toy_commits_train.jsonl").records;
  const auto preds = scratch("self_preds.jsonl");
  const auto subset = scratch("subset.jsonl");
  std::vector<CommitRecord> part(train.begin(), train.begin() + 50);
  save_commit_corpus(subset, part);
  const auto b = cli({"baseline", "--train", kData + "/toy_commits_train.jsonl", "--test", subset.string(), "--out",
                      preds.string()});
  if (b.code != 0) {
    o.fail("baseline exited " + std::to_string(b.code));
    return o;
  }
  const auto s = cli({"score", "--pairs", preds.string(), "--metric", "LOG_MNEXT"});
  if (s.out.find("LOG_MNEXT,100.00,") == std::string::npos) o.fail("Log-MNEXT corpus mean is not 100.00");

  // k = |index| against a full scan.
  const std::vector<CommitRecord> index_records(train.begin(), train.begin() + 100);
  const RetrievalIndex index(index_records);
  auto queries = load_commit_corpus(kData + "/toy_commits_test.jsonl").records;
  queries.insert(queries.end(), train.begin() + 100, train.end());
  BleuConfig norm;
  norm.smoothing = Smoothing::kNorm;
  for (const auto& q : queries) {
    const auto qv = bow_vector(q.diff);
    const auto qt = preprocess(q.diff, {true, false});
    std::vector<double> cos(index_records.size());
    for (std::size_t i = 0; i < cos.size(); ++i) cos[i] = cosine(qv, bow_vector(index_records[i].diff));
    std::vector<std::size_t> order(cos.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cos[a] > cos[b]; });
    std::size_t best = 0;
    if (cos[order[0]] > 0.0) {
      double best_bleu = -1.0;
      for (const std::size_t i : order) {
        const auto ct = preprocess(index_records[i].diff, {true, false});
        const double bl = ct.empty() ? 0.0 : bleu4(qt, ct, norm);
        if (bl > best_bleu) {
          best_bleu = bl;
          best = i;
        }
      }
    }
    const auto r = generate(q.diff, index, index.size());
    if (r.record_index != best || r.message != index_records[best].message) {
      o.fail("generate disagrees with the full scan for " + q.id);
    }
  }
  if (o.ok) o.detail = "Log-MNEXT 100.00 on 50 seen commits; " + std::to_string(queries.size()) + " scans agree";
  return o;
}

Outcome range_invariants() {
  Outcome o;
  testing::TextGen gen(10000);
  const ScoringContext ctx;
  std::size_t scored = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string p = gen.message(0, 14);
    const std::string r = gen.message(1, 14);
    for (const MetricId id : kAllMetrics) {
      const auto v = try_score(p, r, id, default_factors(id), ctx);
      if (!v) continue;
      ++scored;
      if (id == MetricId::kTer) {
        if (!(*v >= 0.0)) o.fail("TER < 0");
      } else if (!(*v >= 0.0 && *v <= 1.0)) {
        o.fail(std::string(metric_name(id)) + " out of [0,1] on '" + p + "' / '" + r + "'");
      }
    }
    const auto tp = tokenize(p);
    const auto tr = tokenize(r);
    if (tr.empty()) continue;
    for (const Smoothing sm : {Smoothing::kNone, Smoothing::kNorm, Smoothing::kCc}) {
      BleuConfig on;
      on.smoothing = sm;
      BleuConfig off = on;
      off.use_brevity_penalty = false;
      const double with_bp = bleu4(tp, tr, on);
      if (bleu4(tp, tr, off) < with_bp) o.fail("BP-off BLEU below BP-on BLEU");
      if (sm == Smoothing::kNorm && !tp.empty() && !(with_bp > 0.0)) o.fail("BLEUNorm = 0 on '" + p + "'");
    }
  }
  if (o.ok) o.detail = "10000 pairs, " + std::to_string(scored) + " defined scores";
  return o;
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"zero-score reproduction", 1.0, zero_score_reproduction},
      {"log_mnext identity branch (1000 strings)", 5.0, identity_branch},
      {"oracle equivalence suites", 60.0, oracle_suites},
      {"spearman correctness", 10.0, spearman_correctness},
      {"ablation grid contract", 60.0, ablation_contract},
      {"end-to-end toy corpus report", 30.0, end_to_end_toy_corpus},
      {"retrieval baseline sanity", 30.0, retrieval_sanity},
      {"metric range invariants (10000 pairs)", 30.0, range_invariants},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = c.check();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.budget_seconds) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "took %.2fs, budget %.0fs", secs, c.budget_seconds);
      o.fail(buf);
    }
    if (!o.ok) ++failures;
    std::printf("[%s] %s (%.3fs): %s\n", o.ok ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
