#include "cmgeval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cmgeval/error.hpp"

namespace cmgeval {

namespace {

bool has_ties(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace

std::vector<double> rank(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // positions i+1 .. j share their mean rank
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = shared;
    i = j;
  }
  return ranks;
}

CorrelationResult spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw InvalidInputError("spearman: length mismatch (" + std::to_string(xs.size()) + " vs " +
                            std::to_string(ys.size()) + ")");
  }
  if (xs.size() < kMinCorrelationSamples) {
    throw InvalidInputError("spearman: need at least 3 samples, got " + std::to_string(xs.size()));
  }
  const auto rx = rank(xs);
  const auto ry = rank(ys);
  const double n = static_cast<double>(xs.size());
  const double mean = (n + 1.0) / 2.0;  // ranks always average to (n+1)/2

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedCorrelationError("spearman: constant input vector");

  CorrelationResult r;
  r.n = xs.size();
  r.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  r.ties_present = has_ties(xs) || has_ties(ys);
  return r;
}

double average_human(std::span<const int> scores) {
  if (scores.empty()) throw ValidationError("no annotator scores");
  double sum = 0.0;
  for (int s : scores) {
    if (s < kMinHumanScore || s > kMaxHumanScore) {
      throw ValidationError("annotator score " + std::to_string(s) + " outside 0..4");
    }
    sum += s;
  }
  return sum / static_cast<double>(scores.size());
}

double corpus_mean(std::span<const double> scores) {
  if (scores.empty()) throw InvalidInputError("corpus mean of an empty score list");
  const double sum = std::accumulate(scores.begin(), scores.end(), 0.0);
  return sum / static_cast<double>(scores.size()) * 100.0;
}

}  // namespace cmgeval
