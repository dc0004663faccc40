#include <gtest/gtest.h>

#include <random>

#include "brmult/exactla.hpp"
#include "support.hpp"

namespace brm {
namespace {

using testing::Fp;
using testing::Q;

template <Field K>
DenseMatrix<K> ints(const K& k, std::vector<std::vector<int>> rows) {
  std::vector<std::vector<typename K::Element>> conv;
  for (const auto& r : rows) {
    std::vector<typename K::Element> c;
    for (int v : r) c.push_back(k.from_int(v));
    conv.push_back(c);
  }
  return DenseMatrix<K>::from_rows(k, rows.empty() ? 0 : rows[0].size(), conv);
}

template <Field K>
DenseMatrix<K> random_int_matrix(const K& k, std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  DenseMatrix<K> a(k, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) a(i, j) = k.from_int(testing::draw(rng, lo, hi));
  }
  return a;
}

TEST(Rref, Identity) {
  Fp k;
  auto res = rref(DenseMatrix<Fp>::identity(k, 2));
  EXPECT_EQ(res.reduced, DenseMatrix<Fp>::identity(k, 2));
  EXPECT_EQ(res.pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(res.rank, 2u);
}

TEST(Rref, ZeroMatrix) {
  Fp k;
  DenseMatrix<Fp> z(k, 3, 4);
  auto res = rref(z);
  EXPECT_EQ(res.reduced, z);
  EXPECT_TRUE(res.pivots.empty());
  EXPECT_EQ(res.rank, 0u);
}

TEST(Rref, DependentRowsOverQ) {
  Q k;
  auto res = rref(ints(k, {{1, 2}, {2, 4}}));
  EXPECT_EQ(res.reduced, ints(k, {{1, 2}, {0, 0}}));
  EXPECT_EQ(res.rank, 1u);
}

TEST(SpanContains, Basics) {
  Fp k;
  std::vector<Fp::Element> v{k.from_int(3), k.from_int(-7), k.from_int(2)};
  EXPECT_TRUE(span_contains(DenseMatrix<Fp>::identity(k, 3), std::span<const Fp::Element>(v)));
  EXPECT_FALSE(span_contains(DenseMatrix<Fp>(k, 2, 3), std::span<const Fp::Element>(v)));
  Q q;
  auto basis = ints(q, {{1, 1, 0}, {0, 1, 1}});
  std::vector<mpq_class> w{1, 0, -1};
  EXPECT_TRUE(span_contains(basis, std::span<const mpq_class>(w)));
  std::vector<mpq_class> u{1, 0, 1};
  EXPECT_FALSE(span_contains(basis, std::span<const mpq_class>(u)));
  std::vector<mpq_class> bad{1, 0};
  EXPECT_THROW(span_contains(basis, std::span<const mpq_class>(bad)), std::invalid_argument);
}

TEST(Kernel, Examples) {
  Fp k;
  EXPECT_EQ(kernel_basis(DenseMatrix<Fp>::identity(k, 3)).rows(), 0u);
  EXPECT_EQ(kernel_basis(DenseMatrix<Fp>(k, 3, 3)), DenseMatrix<Fp>::identity(k, 3));
  Q q;
  auto ker = kernel_basis(ints(q, {{1, 1}}));
  ASSERT_EQ(ker.rows(), 1u);
  EXPECT_EQ(ker(0, 0) + ker(0, 1), 0);
  EXPECT_NE(ker(0, 0), 0);
}

TEST(RrefProperty, IdempotentAndRankNullity) {
  std::mt19937_64 rng(11);
  Fp k;
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = static_cast<std::size_t>(testing::draw(rng, 1, 9));
    const auto c = static_cast<std::size_t>(testing::draw(rng, 1, 9));
    auto a = random_int_matrix(k, rng, r, c, -2, 2);
    auto once = rref(a);
    EXPECT_EQ(rref(once.reduced).reduced, once.reduced);
    auto ker = kernel_basis(a);
    EXPECT_EQ(once.rank + ker.rows(), c);
    for (std::size_t i = 0; i < ker.rows(); ++i) {
      for (std::size_t row = 0; row < r; ++row) {
        auto acc = k.zero();
        for (std::size_t j = 0; j < c; ++j) acc = k.add(acc, k.mul(a(row, j), ker(i, j)));
        EXPECT_TRUE(k.is_zero(acc));
      }
    }
  }
}

TEST(RrefProperty, SpanContainsMatchesRank) {
  std::mt19937_64 rng(12);
  Fp k;
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = static_cast<std::size_t>(testing::draw(rng, 1, 5));
    const auto c = static_cast<std::size_t>(testing::draw(rng, 2, 6));
    auto basis = random_int_matrix(k, rng, r, c, -1, 1);
    auto v = random_int_matrix(k, rng, 1, c, -1, 1);
    auto stacked = basis;
    stacked.append_row(v.row(0));
    EXPECT_EQ(span_contains(basis, v.row(0)), rank(stacked) == rank(basis));
  }
}

TEST(RrefProperty, PrimeFieldAgreesWithRationals) {
  std::mt19937_64 rng(13);
  Fp k;
  Q q;
  for (int trial = 0; trial < 150; ++trial) {
    const auto r = static_cast<std::size_t>(testing::draw(rng, 1, 6));
    const auto c = static_cast<std::size_t>(testing::draw(rng, 1, 6));
    DenseMatrix<Fp> a(k, r, c);
    DenseMatrix<Q> b(q, r, c);
    // Low-rank products make rank deficiency common.
    const int inner = testing::draw(rng, 1, 4);
    std::vector<std::vector<int>> u(r, std::vector<int>(static_cast<std::size_t>(inner)));
    std::vector<std::vector<int>> w(static_cast<std::size_t>(inner), std::vector<int>(c));
    for (auto& row : u) {
      for (auto& x : row) x = testing::draw(rng, -7, 7);
    }
    for (auto& row : w) {
      for (auto& x : row) x = testing::draw(rng, -7, 7);
    }
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        int s = 0;
        for (int t = 0; t < inner; ++t) s += u[i][static_cast<std::size_t>(t)] * w[static_cast<std::size_t>(t)][j];
        a(i, j) = k.from_int(s);
        b(i, j) = s;
      }
    }
    EXPECT_EQ(rank(a), rank(b));
  }
}

TEST(RrefParallel, MatchesSerial) {
  std::mt19937_64 rng(14);
  Fp k;
  for (int trial = 0; trial < 4; ++trial) {
    auto a = random_int_matrix(k, rng, 180, 160, -3, 3);
    for (std::size_t i = 90; i < 180; ++i) {
      for (std::size_t j = 0; j < 160; ++j) a(i, j) = k.add(a(i - 90, j), a(i - 89, j));
    }
    auto par = rref(a);
    auto ser = rref_serial(a);
    EXPECT_EQ(par.reduced, ser.reduced);
    EXPECT_EQ(par.pivots, ser.pivots);
  }
}

}  // namespace
}  // namespace brm
