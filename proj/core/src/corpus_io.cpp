#include "cmgeval/corpus_io.hpp"

#include <fstream>
#include <json.hpp>
#include <unordered_set>

#include "cmgeval/error.hpp"
#include "cmgeval/stats.hpp"
#include "cmgeval/text_prep.hpp"

namespace cmgeval {

namespace {

using json = nlohmann::json;

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

bool blank(std::string_view line) {
  for (char c : line) {
    if (!is_ascii_space(c)) return false;
  }
  return true;
}

// Calls `fn(object, line_no)` for every non-blank line, after JSON parsing.
template <typename Fn>
std::size_t for_each_record(std::istream& in, std::string_view source, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ValidationError(where(source, line_no) + ": malformed record: " + e.what(), line_no);
    }
    if (!obj.is_object()) {
      throw ValidationError(where(source, line_no) + ": record is not an object", line_no);
    }
    fn(obj, line_no);
    ++count;
  }
  if (in.bad()) throw IoError("read failure on " + std::string(source));
  return count;
}

std::optional<std::string> optional_id(const json& obj) {
  const auto it = obj.find("id");
  if (it != obj.end() && it->is_string()) return it->get<std::string>();
  return std::nullopt;
}

std::string string_field(const json& obj, std::string_view name, std::string_view source,
                         std::size_t line) {
  const auto it = obj.find(name);
  if (it == obj.end()) {
    throw ValidationError(where(source, line) + ": missing field '" + std::string(name) + "'", line,
                          optional_id(obj));
  }
  if (!it->is_string()) {
    throw ValidationError(where(source, line) + ": field '" + std::string(name) + "' must be a string",
                          line, optional_id(obj));
  }
  return it->get<std::string>();
}

void check_unique(std::unordered_set<std::string>& seen, const std::string& id,
                  std::string_view source, std::size_t line) {
  if (id.empty()) throw ValidationError(where(source, line) + ": empty id", line);
  if (!seen.insert(id).second) {
    throw ValidationError(where(source, line) + ": duplicate id '" + id + "'", line, id);
  }
}

void require_non_empty(const std::string& value, std::string_view field, const std::string& id,
                       std::string_view source, std::size_t line) {
  if (value.empty()) {
    throw ValidationError(where(source, line) + ": record '" + id + "' has an empty " + std::string(field),
                          line, id);
  }
}

void warn_if_empty(std::size_t count, std::string_view source, std::vector<std::string>& warnings) {
  if (count == 0) warnings.push_back(std::string(source) + ": no records");
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

template <typename T, typename Reader>
Loaded<T> load_file(const std::filesystem::path& path, Reader reader) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return reader(in, path.string());
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace

std::string_view lang_tag(Lang lang) {
  switch (lang) {
    case Lang::kCpp:
      return "cpp";
    case Lang::kCsharp:
      return "csharp";
    case Lang::kJava:
      return "java";
    case Lang::kJavascript:
      return "javascript";
    case Lang::kPython:
      return "python";
    case Lang::kOther:
      return "other";
  }
  return "other";
}

std::string_view lang_label(Lang lang) {
  switch (lang) {
    case Lang::kCpp:
      return "C++";
    case Lang::kCsharp:
      return "C#";
    case Lang::kJava:
      return "Java";
    case Lang::kJavascript:
      return "JS";
    case Lang::kPython:
      return "Py";
    case Lang::kOther:
      return "Other";
  }
  return "Other";
}

std::optional<Lang> parse_lang(std::string_view tag) {
  const std::string t = ascii_lower(tag);
  if (t == "cpp" || t == "c++") return Lang::kCpp;
  if (t == "csharp" || t == "c#" || t == "cs") return Lang::kCsharp;
  if (t == "java") return Lang::kJava;
  if (t == "javascript" || t == "js") return Lang::kJavascript;
  if (t == "python" || t == "py") return Lang::kPython;
  if (t == "other") return Lang::kOther;
  return std::nullopt;
}

Loaded<EvalPair> read_pairs(std::istream& in, std::string_view source) {
  Loaded<EvalPair> out;
  std::unordered_set<std::string> seen;
  const auto n = for_each_record(in, source, [&](const json& obj, std::size_t line) {
    EvalPair p;
    p.id = string_field(obj, "id", source, line);
    p.reference = string_field(obj, "reference", source, line);
    p.prediction = string_field(obj, "prediction", source, line);
    check_unique(seen, p.id, source, line);
    require_non_empty(p.reference, "reference", p.id, source, line);
    out.records.push_back(std::move(p));
  });
  warn_if_empty(n, source, out.warnings);
  return out;
}

Loaded<AnnotatedPair> read_annotations(std::istream& in, std::string_view source) {
  Loaded<AnnotatedPair> out;
  std::unordered_set<std::string> seen;
  const auto n = for_each_record(in, source, [&](const json& obj, std::size_t line) {
    AnnotatedPair p;
    p.id = string_field(obj, "id", source, line);
    p.reference = string_field(obj, "reference", source, line);
    p.prediction = string_field(obj, "prediction", source, line);
    check_unique(seen, p.id, source, line);
    require_non_empty(p.reference, "reference", p.id, source, line);

    const auto it = obj.find("scores");
    if (it == obj.end() || !it->is_array()) {
      throw ValidationError(where(source, line) + ": record '" + p.id + "' needs a 'scores' array",
                            line, p.id);
    }
    for (const auto& s : *it) {
      if (!s.is_number_integer()) {
        throw ValidationError(where(source, line) + ": record '" + p.id + "' has a non-integer score",
                              line, p.id);
      }
      p.annotator_scores.push_back(s.get<int>());
    }
    try {
      p.mean_score = average_human(p.annotator_scores);
    } catch (const ValidationError& e) {
      throw ValidationError(where(source, line) + ": record '" + p.id + "': " + e.what(), line, p.id);
    }
    out.records.push_back(std::move(p));
  });
  warn_if_empty(n, source, out.warnings);
  return out;
}

Loaded<CommitRecord> read_commit_corpus(std::istream& in, std::string_view source) {
  Loaded<CommitRecord> out;
  std::unordered_set<std::string> seen;
  const auto n = for_each_record(in, source, [&](const json& obj, std::size_t line) {
    CommitRecord r;
    r.id = string_field(obj, "id", source, line);
    check_unique(seen, r.id, source, line);
    r.diff = string_field(obj, "diff", source, line);
    r.message = string_field(obj, "message", source, line);
    require_non_empty(r.diff, "diff", r.id, source, line);
    require_non_empty(r.message, "message", r.id, source, line);

    const auto it = obj.find("lang");
    const std::string tag = it != obj.end() && it->is_string() ? it->get<std::string>() : std::string();
    if (const auto lang = parse_lang(tag)) {
      r.lang = *lang;
    } else {
      r.lang = Lang::kOther;
      out.warnings.push_back(where(source, line) + ": record '" + r.id + "' has unknown lang '" + tag +
                             "', using 'other'");
    }
    out.records.push_back(std::move(r));
  });
  warn_if_empty(n, source, out.warnings);
  return out;
}

Loaded<EvalPair> load_pairs(const std::filesystem::path& path) {
  return load_file<EvalPair>(path, [](std::istream& in, const std::string& s) { return read_pairs(in, s); });
}

Loaded<AnnotatedPair> load_annotations(const std::filesystem::path& path) {
  return load_file<AnnotatedPair>(
      path, [](std::istream& in, const std::string& s) { return read_annotations(in, s); });
}

Loaded<CommitRecord> load_commit_corpus(const std::filesystem::path& path) {
  return load_file<CommitRecord>(
      path, [](std::istream& in, const std::string& s) { return read_commit_corpus(in, s); });
}

void write_pairs(std::ostream& out, std::span<const EvalPair> pairs) {
  for (const auto& p : pairs) {
    json obj = {{"id", p.id}, {"reference", p.reference}, {"prediction", p.prediction}};
    out << obj.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

void write_annotations(std::ostream& out, std::span<const AnnotatedPair> pairs) {
  for (const auto& p : pairs) {
    json obj = {{"id", p.id},
                {"reference", p.reference},
                {"prediction", p.prediction},
                {"scores", p.annotator_scores}};
    out << obj.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

void write_commit_corpus(std::ostream& out, std::span<const CommitRecord> records) {
  for (const auto& r : records) {
    json obj = {{"id", r.id}, {"diff", r.diff}, {"message", r.message}, {"lang", lang_tag(r.lang)}};
    out << obj.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

void save_pairs(const std::filesystem::path& path, std::span<const EvalPair> pairs) {
  auto out = open_output(path);
  write_pairs(out, pairs);
  finish(out, path);
}

void save_annotations(const std::filesystem::path& path, std::span<const AnnotatedPair> pairs) {
  auto out = open_output(path);
  write_annotations(out, pairs);
  finish(out, path);
}

void save_commit_corpus(const std::filesystem::path& path, std::span<const CommitRecord> records) {
  auto out = open_output(path);
  write_commit_corpus(out, records);
  finish(out, path);
}

}  // namespace cmgeval
