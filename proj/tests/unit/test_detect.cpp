#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace superpos;
using superpos::testing::full_lambda;
using superpos::testing::ints;
using superpos::testing::levels_of;
using superpos::testing::negated;
using superpos::testing::RandomConfigs;

TEST(Detect, IncidenceMatrixLayout) {
  const auto inc = build_incidence(levels_of(Cube5Family{}));
  ASSERT_EQ(inc.matrix.rows(), 6u);
  ASSERT_EQ(inc.matrix.cols(), 5u);
  EXPECT_EQ(inc.rows[0].projection, 0u);
  EXPECT_EQ(inc.rows[0].atom, Rational(0));
  EXPECT_EQ(inc.rows[5].projection, 2u);
  EXPECT_EQ(inc.rows[5].atom, Rational(1));
  // row (p_3 = 1) holds x2 and x5
  EXPECT_EQ(inc.matrix(5, 1), Rational(1));
  EXPECT_EQ(inc.matrix(5, 4), Rational(1));
  EXPECT_EQ(inc.matrix(5, 0), Rational(0));
}

TEST(Detect, Cube5ClosedPath) {
  const auto r = detect_closed_path(generate(Cube5Family{}));
  EXPECT_EQ(r.kernel_dimension, 1u);
  ASSERT_TRUE(r.witness);
  const auto lambda = full_lambda(*r.witness, 5);
  const auto expected = ints({-2, 1, 1, 1, -1});
  EXPECT_TRUE(lambda == expected || lambda == negated(expected));
  EXPECT_EQ(lambda, ints({2, -1, -1, -1, 1}));  // first nonzero entry positive
  EXPECT_EQ(r.witness->kind, PathKind::Closed);
}

TEST(Detect, ChainHasNoClosedPath) {
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto r = detect_closed_path(generate(ChainFamily{n}));
    EXPECT_FALSE(r.witness) << n;
    EXPECT_EQ(r.kernel_dimension, 0u);
  }
}

TEST(Detect, DuplicatedProfileGivesTwoPointClosedPath) {
  const auto config = superpos::testing::table_config({{1, 2, 1}, {5, 6, 5}});
  const auto r = detect_closed_path(config);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->points, (std::vector<PointIndex>{0, 2}));
  EXPECT_EQ(r.witness->weights, ints({1, -1}));
}

TEST(Detect, Chain6AlternatingPath) {
  const auto levels = levels_of(ChainFamily{6});
  const auto report = search_open_paths(levels, SearchOptions{});
  EXPECT_FALSE(report.closed_path);
  EXPECT_FALSE(report.search_budget_exhausted);
  ASSERT_FALSE(report.open_paths.empty());
  const auto& top = report.open_paths.front();
  EXPECT_EQ(top.witness.length(), 6u);
  EXPECT_EQ(full_lambda(top.witness, 6), ints({1, -1, 1, -1, 1, -1}));
  // x1 and x6 are the only points alone in their p_2 atoms; p_1 cancels as is
  EXPECT_TRUE(top.witness.exceptional[0].empty());
  EXPECT_EQ(top.witness.exceptional[1], (std::vector<PointIndex>{0, 5}));
  EXPECT_EQ(top.functional.delta_ratio, Rational(2, 6));
  EXPECT_EQ(top.functional.norm, 6);
  EXPECT_EQ(top.functional.b_lambda_k, 2);

  const auto longest = longest_open_path(levels, SearchOptions{});
  EXPECT_EQ(longest.length, 6u);
  EXPECT_TRUE(longest.exact);
}

TEST(Detect, SinglePointDegenerateFiltering) {
  const auto levels = levels_of(GridFamily{1, 1});
  SearchOptions opts;
  const auto filtered = search_open_paths(levels, opts);
  EXPECT_TRUE(filtered.open_paths.empty());
  EXPECT_EQ(longest_open_path(levels, opts).length, 0u);

  opts.allow_degenerate = true;
  const auto kept = search_open_paths(levels, opts);
  ASSERT_EQ(kept.open_paths.size(), 1u);
  EXPECT_TRUE(kept.open_paths[0].witness.is_degenerate());
  EXPECT_EQ(kept.open_paths[0].witness.weights, ints({1}));
  EXPECT_EQ(longest_open_path(levels, opts).length, 1u);
}

TEST(Detect, BudgetTruncation) {
  const auto levels = levels_of(ChainFamily{6});
  SearchOptions opts;
  opts.budget = 10;
  const auto r = search_open_paths(levels, opts);
  EXPECT_TRUE(r.search_budget_exhausted);
  EXPECT_EQ(r.choices_examined, 10u);
  opts.budget = 0;
  EXPECT_THROW((void)search_open_paths(levels, opts), InputError);
}

TEST(Detect, MaxReportTruncatesLongestFirst) {
  const auto levels = levels_of(ChainFamily{6});
  SearchOptions opts;
  opts.max_report = 3;
  const auto r = search_open_paths(levels, opts);
  EXPECT_EQ(r.open_paths.size(), 3u);
  EXPECT_GT(r.distinct_found, 3u);
  EXPECT_EQ(r.open_paths.front().witness.length(), 6u);
}

TEST(Detect, FunctionalUsesGivenFunction) {
  const auto levels = levels_of(ChainFamily{4});
  const FunctionData f{{1, 2, 3, 4}};
  const auto r = search_open_paths(levels, SearchOptions{}, &f);
  for (const auto& p : r.open_paths) EXPECT_EQ(p.functional.value, evaluate_functional(p.witness, f).value);
}

TEST(Detect, Cube5ReportsClosedPathOnceWithoutRedundantSets) {
  const auto r = search_open_paths(levels_of(Cube5Family{}), SearchOptions{});
  int closed = 0;
  for (const auto& p : r.open_paths) {
    if (full_lambda(p.witness, 5) == ints({2, -1, -1, -1, 1})) {
      ++closed;
      EXPECT_TRUE(p.witness.all_exceptional_empty());
    }
  }
  EXPECT_EQ(closed, 1);
}

// The RREF-based finder returns exactly the reference elimination's vector.
TEST(Detect, PropertyFinderMatchesReferenceElimination) {
  std::mt19937_64 rng(17);
  RandomConfigs gen(19);
  for (int t = 0; t < 150; ++t) {
    const auto config = gen.next(14, 1, 3, 1 + static_cast<std::int64_t>(t % 6));
    const auto levels = build_levels(config);
    const std::size_t k = levels.projection_count();
    const std::size_t n = levels.point_count();
    std::vector<std::size_t> offset{0};
    for (std::size_t i = 0; i < k; ++i) offset.push_back(offset.back() + levels.atoms(i).size());
    detail::ReducedKernelFinder finder(levels, offset);
    for (int q = 0; q < 40; ++q) {
      std::vector<std::vector<PointIndex>> j(k);
      for (auto& set : j) {
        std::set<PointIndex> s;
        const std::size_t size = std::min<std::size_t>(rng() % (k + 1), n);
        while (s.size() < size) s.insert(rng() % n);
        set.assign(s.begin(), s.end());
      }
      for (bool degenerate : {false, true}) {
        const auto want = detail::first_reduced_kernel_vector(levels, offset, j, degenerate);
        const auto got = finder.first(j, degenerate);
        ASSERT_EQ(got.lambda, want.lambda);
        if (!want.lambda.empty()) {
          ASSERT_EQ(got.free_column, want.free_column);
        }
      }
    }
  }
}

// Every reported witness verifies, respects |J_i| <= k and J_i ⊆ path, is not
// degenerate, and carries the norm identities.
TEST(Detect, PropertyReportedWitnessesAreValid) {
  RandomConfigs gen(23);
  for (int t = 0; t < 60; ++t) {
    const auto config = gen.next(9, 1, 3);
    const auto levels = build_levels(config);
    SearchOptions opts;
    opts.budget = 3000;
    opts.max_report = 1000;
    const auto r = search_open_paths(levels, opts);
    for (const auto& p : r.open_paths) {
      const auto& w = p.witness;
      ASSERT_TRUE(verify_witness(levels, w).valid);
      ASSERT_FALSE(w.is_degenerate());
      ASSERT_EQ(w.kind == PathKind::Closed, w.all_exceptional_empty());
      for (const auto& set : w.exceptional) {
        ASSERT_LE(set.size(), levels.projection_count());
        for (PointIndex x : set) ASSERT_NE(std::find(w.points.begin(), w.points.end(), x), w.points.end());
      }
      ASSERT_EQ(p.functional.norm, functional_norm(w.weights));
      ASSERT_EQ(p.functional.b_lambda_k, largest_weight_sum(w.weights, levels.projection_count()));
      ASSERT_EQ(p.functional.delta_ratio, Rational(p.functional.b_lambda_k, p.functional.norm));
    }
    for (std::size_t s = 1; s < r.open_paths.size(); ++s) {
      ASSERT_GE(r.open_paths[s - 1].witness.length(), r.open_paths[s].witness.length());
    }
  }
}

// A complete search finds a path iff the exhaustive oracle does, with the
// oracle's weight bound raised to the largest weight the search reports.
TEST(Detect, PropertyCompleteSearchAgreesWithOpenOracle) {
  RandomConfigs gen(29);
  int with_paths = 0;
  int without = 0;
  for (int t = 0; t < 60; ++t) {
    const auto config = gen.next(5, 1, 2);
    const auto levels = build_levels(config);
    const auto r = search_open_paths(levels, SearchOptions{});
    ASSERT_FALSE(r.search_budget_exhausted);
    const auto bounded = oracle_open_path(levels, 2);
    if (bounded.found) {
      ASSERT_FALSE(r.open_paths.empty());
    }
    if (r.open_paths.empty()) {
      ++without;
      continue;
    }
    ++with_paths;
    Integer max_weight = 0;
    for (const auto& x : r.open_paths.front().witness.weights) max_weight = std::max(max_weight, Integer(abs(x)));
    if (max_weight <= 3) {
      ASSERT_TRUE(oracle_open_path(levels, static_cast<std::int64_t>(max_weight)).found);
    }
  }
  EXPECT_GT(with_paths, 0);
  EXPECT_GT(without, 0);
}
