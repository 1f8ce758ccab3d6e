#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmgeval/records.hpp"

namespace cmgeval {

/// A rectangular table of pre-formatted cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

enum class ReportFormat {
  kTable,       ///< comma-delimited, header first
  kStructured,  ///< JSON array of objects keyed by header
};

std::optional<ReportFormat> parse_report_format(std::string_view name);

inline constexpr int kCorrelationDecimals = 4;
inline constexpr int kPercentDecimals = 2;
inline constexpr std::string_view kNotAvailable = "NA";

/// Fixed-point rendering, e.g. format_fixed(0.705, 4) == "0.7050". Negative zero prints as zero.
std::string format_fixed(double value, int decimals);
std::string format_optional(const std::optional<double>& value, int decimals);

/// Deterministic rendering: identical tables yield byte-identical text.
std::string render_report(const Table& table, ReportFormat format);
void write_report(const Table& table, const std::filesystem::path& path, ReportFormat format);

/// Per-language percentage means of one model's per-record scores.
struct LanguageScores {
  std::string model;
  std::vector<std::optional<double>> percent;  // one entry per kReportLangs language
  std::optional<double> average;               // mean of the available language columns
};

LanguageScores language_scores(std::string model, std::span<const Lang> langs,
                               std::span<const double> scores);

/// Rows = models; columns model, C++, C#, Java, JS, Py, Avg (two decimals).
Table language_report(std::span<const LanguageScores> models);

}  // namespace cmgeval
