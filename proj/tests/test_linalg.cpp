#include <gtest/gtest.h>

#include <random>

#include "oracles/naive_cdga.hpp"
#include "thomforge/linalg.hpp"

using thomforge::Echelon;
using thomforge::Index;
using thomforge::QuotientBasis;
using thomforge::Rational;
using thomforge::SparseVector;

namespace {

SparseVector vec(std::initializer_list<int> dense) {
  SparseVector v;
  Index i = 0;
  for (int c : dense) v.push_back(i++, c);
  return v;
}

std::vector<SparseVector> random_columns(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int density) {
  std::uniform_int_distribution<int> coeff(-4, 4), keep(0, 9);
  std::vector<SparseVector> out;
  for (std::size_t j = 0; j < cols; ++j) {
    SparseVector v;
    for (std::size_t i = 0; i < rows; ++i) {
      if (keep(rng) < density) v.push_back(i, coeff(rng));
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<Rational>> dense_rows(const std::vector<SparseVector>& cols, std::size_t rows) {
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [i, c] : cols[j]) m[i][j] = c;
  }
  return m;
}

}  // namespace

TEST(SparseVector, AddScaledCancels) {
  SparseVector a = vec({1, 2, 0, 3});
  SparseVector b = vec({1, 0, 5});
  a.add_scaled(b, -1);
  EXPECT_EQ(a.coeff(0), 0);
  EXPECT_EQ(a.coeff(2), -5);
  EXPECT_EQ(a.size(), 3u);
}

TEST(Echelon, RankMatchesDenseOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + trial % 9, cols = 1 + (trial * 7) % 11;
    auto columns = random_columns(rng, rows, cols, 3 + trial % 5);
    EXPECT_EQ(thomforge::rank_of(columns), oracle::dense_rank(dense_rows(columns, rows))) << "trial " << trial;
  }
}

TEST(Echelon, KernelVectorsAreRelations) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto columns = random_columns(rng, 5, 9, 4);
    auto kernel = thomforge::kernel_basis(columns);
    EXPECT_EQ(kernel.size() + thomforge::rank_of(columns), columns.size());
    for (const auto& k : kernel) {
      SparseVector image;
      for (const auto& [j, c] : k) image.add_scaled(columns[j], c);
      EXPECT_TRUE(image.empty());
    }
  }
}

TEST(Echelon, SolveFindsPreimageInBothOrders) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto columns = random_columns(rng, 6, 8, 5);
    SparseVector target;
    target.add_scaled(columns[1], 2);
    target.add_scaled(columns[5], Rational(-1, 3));
    for (bool reverse : {false, true}) {
      auto x = thomforge::solve(columns, target, reverse);
      ASSERT_TRUE(x.has_value());
      SparseVector image;
      for (const auto& [j, c] : *x) image.add_scaled(columns[j], c);
      EXPECT_EQ(image, target);
    }
  }
  EXPECT_FALSE(thomforge::solve({vec({1, 0})}, vec({0, 1})).has_value());
}

TEST(QuotientBasis, CoordinatesModuloBase) {
  QuotientBasis q({vec({1, 1, 0})}, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});
  ASSERT_EQ(q.size(), 2u);  // (0,1,0) is (1,1,0) - (1,0,0)
  auto c = q.coordinates(vec({0, 1, 2}));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->coeff(0), -1);
  EXPECT_EQ(c->coeff(1), 2);
  EXPECT_TRUE(q.in_base(vec({2, 2, 0})));
}
