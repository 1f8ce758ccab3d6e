#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cmgeval/corpus_io.hpp"
#include "cmgeval/error.hpp"
#include "cmgeval/report.hpp"

namespace cmgeval {
namespace {

namespace fs = std::filesystem;

fs::path temp_path(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "cmgeval_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <typename F>
ValidationError validation_error(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e;
  }
  ADD_FAILURE() << "expected ValidationError";
  return ValidationError("none");
}

TEST(ReadPairs, FileOrder) {
  std::istringstream in(
      "{\"id\":\"b\",\"reference\":\"fix bug\",\"prediction\":\"fix\"}\n\n"
      "{\"id\":\"a\",\"reference\":\"add test\",\"prediction\":\"add tests\"}\n");
  const auto got = read_pairs(in);
  ASSERT_EQ(got.records.size(), 2u);
  EXPECT_EQ(got.records[0].id, "b");
  EXPECT_EQ(got.records[1].prediction, "add tests");
  EXPECT_TRUE(got.warnings.empty());
}

TEST(ReadPairs, MissingFieldNamesLine) {
  std::istringstream in("{\"id\":\"a\",\"prediction\":\"fix\"}\n");
  const auto e = validation_error([&] { read_pairs(in, "p.jsonl"); });
  EXPECT_EQ(e.line(), std::optional<std::size_t>(1));
  EXPECT_NE(std::string(e.what()).find("p.jsonl:1"), std::string::npos);
  EXPECT_NE(std::string(e.what()).find("reference"), std::string::npos);
}

TEST(ReadPairs, MalformedJsonNamesLine) {
  std::istringstream in("{\"id\":\"a\",\"reference\":\"x\",\"prediction\":\"y\"}\n{oops\n");
  EXPECT_EQ(validation_error([&] { read_pairs(in); }).line(), std::optional<std::size_t>(2));
}

TEST(ReadPairs, DuplicateAndEmptyReference) {
  std::istringstream dup(
      "{\"id\":\"a\",\"reference\":\"x\",\"prediction\":\"y\"}\n"
      "{\"id\":\"a\",\"reference\":\"x\",\"prediction\":\"y\"}\n");
  const auto e = validation_error([&] { read_pairs(dup); });
  EXPECT_EQ(e.record_id(), std::optional<std::string>("a"));
  std::istringstream empty_ref("{\"id\":\"a\",\"reference\":\"\",\"prediction\":\"y\"}\n");
  EXPECT_THROW(read_pairs(empty_ref), ValidationError);
}

TEST(ReadPairs, EmptyInputWarns) {
  std::istringstream in("");
  const auto got = read_pairs(in);
  EXPECT_TRUE(got.records.empty());
  EXPECT_EQ(got.warnings.size(), 1u);
}

TEST(ReadAnnotations, MeanAndRange) {
  std::istringstream ok("{\"id\":\"a\",\"reference\":\"x\",\"prediction\":\"y\",\"scores\":[2,3,4]}\n");
  EXPECT_EQ(read_annotations(ok).records[0].mean_score, 3.0);
  std::istringstream bad("{\"id\":\"q7\",\"reference\":\"x\",\"prediction\":\"y\",\"scores\":[5]}\n");
  EXPECT_EQ(validation_error([&] { read_annotations(bad); }).record_id(), std::optional<std::string>("q7"));
  std::istringstream none("{\"id\":\"a\",\"reference\":\"x\",\"prediction\":\"y\",\"scores\":[]}\n");
  EXPECT_THROW(read_annotations(none), ValidationError);
}

TEST(ReadAnnotations, HundredRecords) {
  std::ostringstream s;
  for (int i = 0; i < 100; ++i) {
    s << "{\"id\":\"r" << i << "\",\"reference\":\"fix bug\",\"prediction\":\"fix\",\"scores\":[" << i % 5
      << "]}\n";
  }
  std::istringstream in(s.str());
  EXPECT_EQ(read_annotations(in).records.size(), 100u);
}

TEST(ReadCommitCorpus, LanguageTags) {
  std::istringstream in(
      "{\"id\":\"1\",\"diff\":\"+ a\",\"message\":\"m\",\"lang\":\"java\"}\n"
      "{\"id\":\"2\",\"diff\":\"+ b\",\"message\":\"m\",\"lang\":\"ruby\"}\n");
  const auto got = read_commit_corpus(in);
  EXPECT_EQ(got.records[0].lang, Lang::kJava);
  EXPECT_EQ(got.records[1].lang, Lang::kOther);
  EXPECT_EQ(got.warnings.size(), 1u);
  std::istringstream empty_diff("{\"id\":\"3\",\"diff\":\"\",\"message\":\"m\",\"lang\":\"java\"}\n");
  EXPECT_EQ(validation_error([&] { read_commit_corpus(empty_diff); }).record_id(),
            std::optional<std::string>("3"));
}

TEST(Lang, TagsAndAliases) {
  EXPECT_EQ(parse_lang("C++"), Lang::kCpp);
  EXPECT_EQ(parse_lang("js"), Lang::kJavascript);
  EXPECT_EQ(parse_lang("Py"), Lang::kPython);
  EXPECT_FALSE(parse_lang("ruby"));
  for (const Lang l : kReportLangs) EXPECT_EQ(parse_lang(lang_tag(l)), l);
}

TEST(RoundTrip, AllRecordKinds) {
  const std::vector<EvalPair> pairs = {{"a", "Fix \"quoted\" bug\n", "fix bug"}, {"b", "ünïcode", ""}};
  const std::vector<AnnotatedPair> ann = {{"a", "x", "y", {1, 2}, 1.5}, {"b", "x y", "z", {4}, 4.0}};
  const std::vector<CommitRecord> commits = {{"c1", "+ a\n- b", "msg", Lang::kCsharp},
                                             {"c2", "+ c", "msg 2", Lang::kOther}};
  save_pairs(temp_path("pairs.jsonl"), pairs);
  save_annotations(temp_path("ann.jsonl"), ann);
  save_commit_corpus(temp_path("commits.jsonl"), commits);
  EXPECT_EQ(load_pairs(temp_path("pairs.jsonl")).records, pairs);
  EXPECT_EQ(load_annotations(temp_path("ann.jsonl")).records, ann);
  EXPECT_EQ(load_commit_corpus(temp_path("commits.jsonl")).records, commits);
}

TEST(Load, MissingFileIsIoError) {
  EXPECT_THROW(load_pairs("/nonexistent/pairs.jsonl"), IoError);
  EXPECT_THROW(save_pairs("/nonexistent/dir/pairs.jsonl", {}), IoError);
}

TEST(BundledData, Loads) {
  const std::string dir = CMGEVAL_DATA_DIR;
  EXPECT_EQ(load_annotations(dir + "/annotations_synthetic20.jsonl").records.size(), 20u);
  EXPECT_EQ(load_commit_corpus(dir + "/toy_commits_train.jsonl").records.size(), 160u);
  EXPECT_EQ(load_commit_corpus(dir + "/toy_commits_test.jsonl").records.size(), 40u);
}

TEST(Report, FixedFormatting) {
  EXPECT_EQ(format_fixed(0.705, 4), "0.7050");
  EXPECT_EQ(format_fixed(-0.00001, 4), "0.0000");
  EXPECT_EQ(format_fixed(14.13, 2), "14.13");
  EXPECT_EQ(format_optional(std::nullopt, 4), "NA");
}

TEST(Report, CsvAndJson) {
  Table t{{"metric", "rho"}, {{"BLEU4", "0.1000"}, {"a,b", "NA"}}};
  EXPECT_EQ(render_report(t, ReportFormat::kTable), "metric,rho\nBLEU4,0.1000\n\"a,b\",NA\n");
  const auto json = render_report(t, ReportFormat::kStructured);
  EXPECT_NE(json.find("\"rho\": 0.1"), std::string::npos);
  EXPECT_NE(json.find("null"), std::string::npos);
}

TEST(Report, WrittenTwiceIsByteIdentical) {
  Table t{{"metric", "factor", "without", "with", "clean"}, {{"TER", "length", "0.1", "0.1", "0.1"}}};
  write_report(t, temp_path("r1.csv"), ReportFormat::kTable);
  write_report(t, temp_path("r2.csv"), ReportFormat::kTable);
  EXPECT_EQ(slurp(temp_path("r1.csv")), slurp(temp_path("r2.csv")));
  EXPECT_THROW(write_report(t, "/nonexistent/dir/r.csv", ReportFormat::kTable), IoError);
}

TEST(Report, LanguageTableShape) {
  const std::vector<Lang> langs = {Lang::kCpp, Lang::kCsharp, Lang::kJava, Lang::kJavascript, Lang::kPython,
                                   Lang::kPython, Lang::kOther};
  const std::vector<double> scores = {0.1, 0.2, 0.3, 0.4, 0.5, 0.7, 1.0};
  const auto ls = language_scores("NNGen", langs, scores);
  EXPECT_NEAR(*ls.percent[4], 60.0, 1e-12);
  EXPECT_NEAR(*ls.average, (10 + 20 + 30 + 40 + 60) / 5.0, 1e-12);
  const auto t = language_report(std::vector<LanguageScores>{ls});
  EXPECT_EQ(t.header, (std::vector<std::string>{"model", "C++", "C#", "Java", "JS", "Py", "Avg"}));
  EXPECT_EQ(t.rows[0], (std::vector<std::string>{"NNGen", "10.00", "20.00", "30.00", "40.00", "60.00", "32.00"}));
}

}  // namespace
}  // namespace cmgeval
