#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cmgeval {

struct CorrelationResult {
  double rho = 0.0;
  std::size_t n = 0;
  bool ties_present = false;
};

inline constexpr std::size_t kMinCorrelationSamples = 3;

/// 1-based ranks; tied values share the mean of the positions they occupy.
std::vector<double> rank(std::span<const double> values);

/// Spearman's rho as the Pearson correlation of fractional ranks (tie-correct).
/// Throws InvalidInputError on length mismatch or n < 3, UndefinedCorrelationError when
/// either vector is constant.
CorrelationResult spearman(std::span<const double> xs, std::span<const double> ys);

inline constexpr int kMinHumanScore = 0;
inline constexpr int kMaxHumanScore = 4;

/// Arithmetic mean of per-annotator scores in [0, 4]; throws ValidationError otherwise.
double average_human(std::span<const int> scores);

/// Arithmetic mean scaled to a percentage.
double corpus_mean(std::span<const double> scores);

}  // namespace cmgeval
