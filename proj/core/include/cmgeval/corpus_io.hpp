#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmgeval/records.hpp"

namespace cmgeval {

/// Records of one file plus any non-fatal warnings raised while reading it.
template <typename T>
struct Loaded {
  std::vector<T> records;
  std::vector<std::string> warnings;
};

// Line-delimited JSON readers. Blank lines are skipped; every ValidationError names the
// source, the 1-based line and, when known, the record id.

Loaded<EvalPair> read_pairs(std::istream& in, std::string_view source = "<pairs>");
Loaded<AnnotatedPair> read_annotations(std::istream& in, std::string_view source = "<annotations>");
Loaded<CommitRecord> read_commit_corpus(std::istream& in, std::string_view source = "<corpus>");

Loaded<EvalPair> load_pairs(const std::filesystem::path& path);
Loaded<AnnotatedPair> load_annotations(const std::filesystem::path& path);
Loaded<CommitRecord> load_commit_corpus(const std::filesystem::path& path);

void write_pairs(std::ostream& out, std::span<const EvalPair> pairs);
void write_annotations(std::ostream& out, std::span<const AnnotatedPair> pairs);
void write_commit_corpus(std::ostream& out, std::span<const CommitRecord> records);

void save_pairs(const std::filesystem::path& path, std::span<const EvalPair> pairs);
void save_annotations(const std::filesystem::path& path, std::span<const AnnotatedPair> pairs);
void save_commit_corpus(const std::filesystem::path& path, std::span<const CommitRecord> records);

}  // namespace cmgeval
