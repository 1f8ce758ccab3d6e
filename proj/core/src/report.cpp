#include "cmgeval/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "cmgeval/error.hpp"
#include "cmgeval/stats.hpp"

namespace cmgeval {

namespace {

std::string csv_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_csv_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_cell(cells[i]);
  }
  out += '\n';
}

nlohmann::ordered_json json_cell(const std::string& cell) {
  if (cell == kNotAvailable) return nullptr;
  if (!cell.empty()) {
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() + cell.size() && std::isfinite(v)) return v;
  }
  return cell;
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "table" || name == "csv") return ReportFormat::kTable;
  if (name == "structured" || name == "json") return ReportFormat::kStructured;
  return std::nullopt;
}

std::string format_fixed(double value, int decimals) {
  if (std::isnan(value)) return std::string(kNotAvailable);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  // "-0.0000" -> "0.0000"
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string format_optional(const std::optional<double>& value, int decimals) {
  return value ? format_fixed(*value, decimals) : std::string(kNotAvailable);
}

std::string render_report(const Table& table, ReportFormat format) {
  if (format == ReportFormat::kTable) {
    std::string out;
    append_csv_row(out, table.header);
    for (const auto& row : table.rows) append_csv_row(out, row);
    return out;
  }
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      obj[table.header[c]] = c < row.size() ? json_cell(row[c]) : nullptr;
    }
    arr.push_back(std::move(obj));
  }
  return arr.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
}

void write_report(const Table& table, const std::filesystem::path& path, ReportFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write report " + path.string());
  out << render_report(table, format);
  out.flush();
  if (!out) throw IoError("write failure on " + path.string());
}

LanguageScores language_scores(std::string model, std::span<const Lang> langs,
                               std::span<const double> scores) {
  if (langs.size() != scores.size()) throw InvalidInputError("language/score count mismatch");
  LanguageScores out;
  out.model = std::move(model);
  double sum = 0.0;
  std::size_t available = 0;
  for (const Lang lang : kReportLangs) {
    std::vector<double> subset;
    for (std::size_t i = 0; i < langs.size(); ++i) {
      if (langs[i] == lang) subset.push_back(scores[i]);
    }
    if (subset.empty()) {
      out.percent.emplace_back(std::nullopt);
      continue;
    }
    const double pct = corpus_mean(subset);
    out.percent.emplace_back(pct);
    sum += pct;
    ++available;
  }
  if (available > 0) out.average = sum / static_cast<double>(available);
  return out;
}

Table language_report(std::span<const LanguageScores> models) {
  Table t;
  t.header.emplace_back("model");
  for (const Lang lang : kReportLangs) t.header.emplace_back(lang_label(lang));
  t.header.emplace_back("Avg");
  for (const auto& m : models) {
    std::vector<std::string> row{m.model};
    for (const auto& p : m.percent) row.push_back(format_optional(p, kPercentDecimals));
    row.push_back(format_optional(m.average, kPercentDecimals));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace cmgeval
