#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "cmgeval/error.hpp"
#include "cmgeval/stats.hpp"
#include "oracles.hpp"

namespace cmgeval {
namespace {

using Vec = std::vector<double>;

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Vec{10, 20, 30}), (Vec{1, 2, 3}));
  EXPECT_EQ(rank(Vec{5, 5}), (Vec{1.5, 1.5}));
  EXPECT_EQ(rank(Vec{3, 1, 3, 2}), (Vec{3.5, 1, 3.5, 2}));
}

TEST(Rank, SumIsTriangular) {
  std::mt19937 rng(51);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
    Vec v(n);
    for (auto& x : v) x = std::uniform_int_distribution<int>(0, 5)(rng);
    const auto r = rank(v);
    EXPECT_EQ(std::accumulate(r.begin(), r.end(), 0.0), n * (n + 1) / 2.0);
  }
}

TEST(Spearman, Examples) {
  EXPECT_EQ(spearman(Vec{1, 2, 3, 4}, Vec{1, 2, 3, 4}).rho, 1.0);
  EXPECT_EQ(spearman(Vec{1, 2, 3, 4}, Vec{4, 3, 2, 1}).rho, -1.0);
  const auto r = spearman(Vec{1, 2, 3}, Vec{1, 3, 2});
  EXPECT_EQ(r.rho, 0.5);
  EXPECT_EQ(r.n, 3u);
  EXPECT_FALSE(r.ties_present);
}

TEST(Spearman, Errors) {
  EXPECT_THROW(spearman(Vec{1, 2, 3}, Vec{1, 2}), InvalidInputError);
  EXPECT_THROW(spearman(Vec{1, 2}, Vec{1, 2}), InvalidInputError);
  EXPECT_THROW(spearman(Vec{1, 1, 1}, Vec{1, 2, 3}), UndefinedCorrelationError);
}

TEST(Spearman, TiesFlagged) {
  const auto r = spearman(Vec{1, 1, 1, 2}, Vec{1, 2, 3, 4});
  EXPECT_TRUE(r.ties_present);
  EXPECT_LE(std::abs(r.rho), 1.0);
}

TEST(Spearman, ClosedFormWithoutTies) {
  std::mt19937 rng(52);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 50)(rng);
    Vec xs(n), ys(n);
    std::iota(xs.begin(), xs.end(), 0.0);
    std::iota(ys.begin(), ys.end(), 0.0);
    std::shuffle(xs.begin(), xs.end(), rng);
    std::shuffle(ys.begin(), ys.end(), rng);
    EXPECT_NEAR(spearman(xs, ys).rho, oracle::closed_form_spearman(xs, ys), 1e-12);
  }
}

TEST(Spearman, MonotoneTransformAndSymmetry) {
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    Vec xs(20), ys(20);
    for (auto& x : xs) x = std::round(u(rng) * 4) / 4;  // ties on purpose
    for (auto& y : ys) y = u(rng);
    Vec tx(xs.size());
    std::transform(xs.begin(), xs.end(), tx.begin(), [](double x) { return std::exp(x) * 7 + 1; });
    try {
      const double rho = spearman(xs, ys).rho;
      EXPECT_EQ(spearman(tx, ys).rho, rho);
      EXPECT_EQ(spearman(ys, xs).rho, rho);
    } catch (const UndefinedCorrelationError&) {
    }
  }
}

TEST(AverageHuman, Examples) {
  EXPECT_EQ(average_human(std::vector<int>{2, 3, 4}), 3.0);
  EXPECT_EQ(average_human(std::vector<int>{0, 0, 0}), 0.0);
  EXPECT_EQ(average_human(std::vector<int>{4}), 4.0);
  EXPECT_THROW(average_human(std::vector<int>{5}), ValidationError);
  EXPECT_THROW(average_human(std::vector<int>{}), ValidationError);
}

TEST(CorpusMean, Examples) {
  EXPECT_EQ(corpus_mean(Vec{1.0, 1.0}), 100.0);
  EXPECT_EQ(corpus_mean(Vec{0.0, 1.0}), 50.0);
  EXPECT_NEAR(corpus_mean(Vec(7, 0.1413)), 14.13, 1e-9);
}

}  // namespace
}  // namespace cmgeval
