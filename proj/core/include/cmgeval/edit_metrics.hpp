#pragma once

#include <cstddef>

#include "cmgeval/text_prep.hpp"

namespace cmgeval {

/// Operations of a minimal unit-cost word edit script turning a prediction into its reference.
struct EditSummary {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;

  std::size_t total() const noexcept { return substitutions + deletions + insertions; }
  friend bool operator==(const EditSummary&, const EditSummary&) = default;
};

/// Levenshtein DP over tokens. Ties in the backtrace prefer substitution, then deletion,
/// then insertion.
EditSummary edit_summary(const TokenSeq& pred, const TokenSeq& ref);

/// Edits / |ref|, without shift operations; not clamped to 1.
double ter(const TokenSeq& pred, const TokenSeq& ref);

}  // namespace cmgeval
