#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace superpos;
using superpos::testing::ints;

namespace {

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int spread) {
  RatMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      // sparse-ish small integers so that rank deficiency is common
      if (rng() % 3 == 0) m(r, c) = Rational(static_cast<std::int64_t>(rng() % (2 * spread + 1)) - spread);
    }
  }
  return m;
}

RatVector times(const RatMatrix& m, const IntVector& v) { return m.multiply(to_rational(v)); }

bool all_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

bool is_primitive(const IntVector& v) {
  Integer g = 0;
  int first = 0;
  for (const auto& x : v) {
    g = boost::multiprecision::gcd(g, x);
    if (first == 0 && x != 0) first = x.sign();
  }
  return g == 1 && first == 1;
}

}  // namespace

TEST(RatMat, RrefRankDeficient) {
  const RatMatrix m{{1, 2}, {2, 4}};
  const auto r = rref(m);
  EXPECT_EQ(r.rank, 1u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
  EXPECT_EQ(r.reduced, (RatMatrix{{1, 2}, {0, 0}}));
  EXPECT_EQ(r.transform.multiply(std::vector<Rational>{1, 2}), (RatVector{1, 0}));
}

TEST(RatMat, RrefPivotRuleAndFractions) {
  const RatMatrix m{{0, 2, 1}, {3, 0, 1}};
  const auto r = rref(m);
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.reduced, (RatMatrix{{1, 0, Rational(1, 3)}, {0, 1, Rational(1, 2)}}));
}

TEST(RatMat, KernelBasisNormalization) {
  const RatMatrix m{{1, 2}, {2, 4}};
  const auto basis = right_kernel_basis(m);
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], ints({2, -1}));

  const RatMatrix full{{1, 0}, {0, 1}};
  EXPECT_TRUE(right_kernel_basis(full).empty());

  const auto left = left_kernel_basis(m);
  ASSERT_EQ(left.size(), 1u);
  EXPECT_EQ(left[0], ints({2, -1}));
}

TEST(RatMat, PrimitiveInteger) {
  const RatVector v{Rational(-1, 2), Rational(1, 3), Rational(0)};
  EXPECT_EQ(primitive_integer(v), ints({3, -2, 0}));
  EXPECT_EQ(primitive_integer(RatVector{0, 0}), ints({0, 0}));
  // beyond 64 bits after scaling: the multiprecision path gives the same answer
  const Rational huge = Rational(INT64_MAX) * Rational(4);
  const auto p = primitive_integer(RatVector{huge, Rational(-2)});
  EXPECT_EQ(p[0], Integer(INT64_MAX) * 2);
  EXPECT_EQ(p[1], Integer(-1));
}

TEST(RatMat, SolveConsistent) {
  const RatMatrix m{{1, 1}, {1, -1}};
  const auto out = solve(m, RatVector{3, 1});
  ASSERT_TRUE(std::holds_alternative<Solution>(out));
  EXPECT_EQ(std::get<Solution>(out).values, (RatVector{2, 1}));
}

TEST(RatMat, SolveInconsistentGivesLeftCombination) {
  const RatMatrix m{{1, 1}, {1, 1}};
  const auto out = solve(m, RatVector{1, 2});
  ASSERT_TRUE(std::holds_alternative<Inconsistent>(out));
  EXPECT_EQ(std::get<Inconsistent>(out).left_combination, ints({1, -1}));
  EXPECT_THROW((void)solve(m, RatVector{1}), std::invalid_argument);
}

// Kernel vectors are primitive, annihilated by M, and as many as the nullity.
TEST(RatMat, PropertyKernelAndRank) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const std::size_t rows = 1 + rng() % 7;
    const std::size_t cols = 1 + rng() % 8;
    const auto m = random_matrix(rng, rows, cols, 3);
    const auto r = rref(m);
    ASSERT_EQ(r.transform.rows(), rows);
    // transform · m == reduced
    for (std::size_t c = 0; c < cols; ++c) {
      RatVector col(rows);
      for (std::size_t i = 0; i < rows; ++i) col[i] = m(i, c);
      const auto got = r.transform.multiply(col);
      for (std::size_t i = 0; i < rows; ++i) ASSERT_EQ(got[i], r.reduced(i, c));
    }
    ASSERT_EQ(rank(m), rank(m.transpose()));
    const auto basis = right_kernel_basis(m);
    ASSERT_EQ(basis.size(), cols - r.rank);
    for (const auto& v : basis) {
      ASSERT_TRUE(all_zero(times(m, v)));
      ASSERT_TRUE(is_primitive(v));
    }
    RatMatrix stacked(basis.size(), cols);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      for (std::size_t c = 0; c < cols; ++c) stacked(b, c) = Rational(basis[b][c]);
    }
    ASSERT_EQ(rank(stacked), basis.size());
  }
}

// solve() either reproduces rhs or certifies inconsistency.
TEST(RatMat, PropertySolveOrCertify) {
  std::mt19937_64 rng(5);
  int certified = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t rows = 1 + rng() % 7;
    const std::size_t cols = 1 + rng() % 6;
    const auto m = random_matrix(rng, rows, cols, 2);
    RatVector rhs(rows);
    for (auto& x : rhs) x = Rational(static_cast<std::int64_t>(rng() % 7) - 3);
    const auto out = solve(m, rhs);
    if (const auto* s = std::get_if<Solution>(&out)) {
      ASSERT_EQ(m.multiply(s->values), rhs);
    } else {
      const auto& c = std::get<Inconsistent>(out).left_combination;
      const auto rc = to_rational(c);
      ASSERT_TRUE(all_zero(m.left_multiply(rc)));
      Rational dot;
      for (std::size_t i = 0; i < rows; ++i) dot += rc[i] * rhs[i];
      ASSERT_FALSE(dot.is_zero());
      ++certified;
    }
  }
  EXPECT_GT(certified, 0);
}

// The incremental eliminator reproduces right_kernel_basis column by column.
TEST(RatMat, PropertyColumnEliminatorMatchesKernelBasis) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 300; ++t) {
    const std::size_t rows = 1 + rng() % 6;
    const std::size_t cols = 1 + rng() % 9;
    const auto m = random_matrix(rng, rows, cols, 2);
    const auto basis = right_kernel_basis(m);
    ColumnEliminator elim(rows);
    std::size_t next = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      std::vector<std::pair<std::size_t, Rational>> column;
      for (std::size_t r = 0; r < rows; ++r) {
        if (!m(r, c).is_zero()) column.emplace_back(r, m(r, c));
      }
      auto v = elim.append(column);
      if (!v) continue;
      v->resize(cols);
      ASSERT_LT(next, basis.size());
      ASSERT_EQ(primitive_integer(*v), basis[next]);
      ++next;
    }
    ASSERT_EQ(next, basis.size());
    ASSERT_EQ(elim.rank(), cols - basis.size());
  }
}
