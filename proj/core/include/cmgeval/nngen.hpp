#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cmgeval/records.hpp"

namespace cmgeval {

/// Term counts over a diff's tokens (lower-cased, punctuation kept). No zero entries.
using BowVector = std::map<std::string, std::size_t>;

BowVector bow_vector(std::string_view diff);

/// dot(a, b) / (|a| |b|); 0 when either vector is empty.
double cosine(const BowVector& a, const BowVector& b);

/// Bag-of-words nearest-neighbour index over training commits, in input order.
class RetrievalIndex {
 public:
  explicit RetrievalIndex(std::span<const CommitRecord> training);

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const CommitRecord& record(std::size_t i) const { return records_[i]; }
  const BowVector& vector(std::size_t i) const { return vectors_[i]; }
  /// Term -> dense id over exactly the training terms.
  const std::unordered_map<std::string, std::size_t>& vocabulary() const noexcept { return vocab_; }

  /// Cosine similarity of `query` to every record, by record index.
  std::vector<double> similarities(const BowVector& query) const;

 private:
  struct Posting {
    std::size_t record;
    std::size_t count;
  };

  std::vector<CommitRecord> records_;
  std::vector<BowVector> vectors_;
  std::vector<std::size_t> squared_norms_;
  std::unordered_map<std::string, std::size_t> vocab_;
  std::vector<std::vector<Posting>> postings_;
};

struct Retrieval {
  std::string message;
  std::string provenance;  ///< id of the record whose message was returned
  std::size_t record_index = 0;
  double similarity = 0.0;
  /// Set when no training diff shares a term with the query; the first record is returned.
  bool zero_similarity = false;
};

inline constexpr std::size_t kDefaultNeighbours = 5;

/// Takes the k most cosine-similar training diffs (ties by index order), then returns the
/// message of the one whose diff has the highest smoothed BLEU4 against the query diff.
/// Throws InvalidInputError for an empty index or k == 0.
Retrieval generate(std::string_view query_diff, const RetrievalIndex& index,
                   std::size_t k = kDefaultNeighbours);

}  // namespace cmgeval
