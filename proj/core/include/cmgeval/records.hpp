#pragma once

#include <string>
#include <string_view>
#include <optional>
#include <vector>

namespace cmgeval {

/// A reference commit message and a generated one.
struct EvalPair {
  std::string id;
  std::string reference;
  std::string prediction;

  friend bool operator==(const EvalPair&, const EvalPair&) = default;
};

/// An EvalPair with per-annotator quality scores (0..4) and their mean.
struct AnnotatedPair {
  std::string id;
  std::string reference;
  std::string prediction;
  std::vector<int> annotator_scores;
  double mean_score = 0.0;

  friend bool operator==(const AnnotatedPair&, const AnnotatedPair&) = default;
};

enum class Lang { kCpp, kCsharp, kJava, kJavascript, kPython, kOther };

/// Canonical tag used in corpus files: cpp, csharp, java, javascript, python, other.
std::string_view lang_tag(Lang lang);
/// Column label used in per-language reports: C++, C#, Java, JS, Py, Other.
std::string_view lang_label(Lang lang);
/// Case-insensitive; accepts the canonical tags plus common aliases (c++, c#, js, py, ...).
std::optional<Lang> parse_lang(std::string_view tag);

/// The five languages reported per column, in report order.
inline constexpr Lang kReportLangs[] = {Lang::kCpp, Lang::kCsharp, Lang::kJava, Lang::kJavascript,
                                        Lang::kPython};

struct CommitRecord {
  std::string id;
  std::string diff;
  std::string message;
  Lang lang = Lang::kOther;

  friend bool operator==(const CommitRecord&, const CommitRecord&) = default;
};

}  // namespace cmgeval
