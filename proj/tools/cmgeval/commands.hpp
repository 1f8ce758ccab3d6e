#pragma once

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "cmgeval/report.hpp"

namespace cmgeval::cli {

/// Stable process exit codes.
enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitIo = 2 };

/// Default synonym file when --synonyms is absent; the bundled list is used when unset too.
inline constexpr const char* kSynonymsEnv = "CMGEVAL_SYNONYMS";

struct RunConfig {
  std::string subcommand;
  std::filesystem::path pairs;
  std::filesystem::path annotations;
  std::filesystem::path train;
  std::filesystem::path test;
  std::filesystem::path scores;
  std::filesystem::path params;
  std::filesystem::path synonyms;
  std::filesystem::path out;     ///< empty = the output stream
  std::filesystem::path report;  ///< baseline: per-language report path
  std::vector<std::string> metrics;
  std::string factors;
  ReportFormat format = ReportFormat::kTable;
  std::size_t k = 5;
  std::size_t jobs = 1;
  std::string model = "NNGen";
  bool raw_orientation = false;
};

// Each command throws cmgeval errors; run() maps them to exit codes.
void cmd_score(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_ablate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_correlate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_baseline(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and runs the chosen subcommand.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmgeval::cli
