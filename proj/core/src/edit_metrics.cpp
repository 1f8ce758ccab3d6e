#include "cmgeval/edit_metrics.hpp"

#include <algorithm>
#include <vector>

#include "cmgeval/error.hpp"

namespace cmgeval {

EditSummary edit_summary(const TokenSeq& pred, const TokenSeq& ref) {
  const std::size_t n = pred.size();
  const std::size_t m = ref.size();
  const std::size_t cols = m + 1;
  std::vector<std::size_t> d((n + 1) * cols);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return d[i * cols + j]; };

  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = at(i - 1, j - 1) + (pred[i - 1].surface == ref[j - 1].surface ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  EditSummary s;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = pred[i - 1].surface == ref[j - 1].surface;
      if (at(i - 1, j - 1) + (same ? 0 : 1) == at(i, j)) {
        if (!same) ++s.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i - 1, j) + 1 == at(i, j)) {
      ++s.deletions;
      --i;
    } else {
      ++s.insertions;
      --j;
    }
  }
  return s;
}

double ter(const TokenSeq& pred, const TokenSeq& ref) {
  if (ref.empty()) throw InvalidReferenceError("reference is empty");
  return static_cast<double>(edit_summary(pred, ref).total()) / static_cast<double>(ref.size());
}

}  // namespace cmgeval
