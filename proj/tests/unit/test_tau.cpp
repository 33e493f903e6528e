#include "support.hpp"

#include <gtest/gtest.h>

using namespace superpos;
using superpos::testing::levels_of;
using superpos::testing::RandomConfigs;

namespace {

using Kind = TauVerdict::Kind;

// τ straight from its definition, on projection values rather than atoms.
PointSet naive_tau(const Configuration& config, const PointSet& z) {
  PointSet out;
  for (PointIndex x : z) {
    bool keep = true;
    for (const auto& p : config.projections()) {
      const auto v = evaluate_projection(p, config.point(x));
      std::size_t mates = 0;
      for (PointIndex y : z) {
        if (evaluate_projection(p, config.point(y)) == v) ++mates;
      }
      keep = keep && mates >= 2;
    }
    if (keep) out.push_back(x);
  }
  return out;
}

Configuration l_shape() {
  auto pt = [](const char* id, std::int64_t a, std::int64_t b) {
    return Point{id, std::vector<Rational>{Rational(a), Rational(b)}};
  };
  return Configuration("L", {pt("a", 0, 0), pt("b", 0, 1), pt("c", 1, 0)},
                       {CoordinateProjection{0}, CoordinateProjection{1}});
}

}  // namespace

TEST(Tau, LShape) {
  const auto levels = build_levels(l_shape());
  const PointSet all{0, 1, 2};
  EXPECT_EQ(tau_i(levels, all, 0), (PointSet{0, 1}));
  EXPECT_EQ(tau_i(levels, all, 1), (PointSet{0, 2}));
  EXPECT_EQ(tau_step(levels, all), (PointSet{0}));
  const auto trace = tau_iterate(levels);
  EXPECT_EQ(trace.verdict, (TauVerdict{Kind::EmptiedAt, 2}));
  ASSERT_EQ(trace.stages.size(), 3u);
  EXPECT_TRUE(trace.stages.back().empty());
}

TEST(Tau, GridIsFixedAtOnce) {
  const auto trace = tau_iterate(levels_of(GridFamily{2, 2}));
  EXPECT_EQ(trace.verdict, (TauVerdict{Kind::FixedPointReached, 0}));
  EXPECT_EQ(trace.surviving().size(), 4u);
}

TEST(Tau, Cube5IsFixedAtOnce) {
  // every cube5 point shares each coordinate with another point
  const auto trace = tau_iterate(levels_of(Cube5Family{}));
  EXPECT_EQ(trace.verdict, (TauVerdict{Kind::FixedPointReached, 0}));
}

TEST(Tau, ChainEmptiesFromTheEnds) {
  const auto trace = tau_iterate(levels_of(ChainFamily{6}));
  EXPECT_EQ(trace.verdict, (TauVerdict{Kind::EmptiedAt, 3}));
  EXPECT_EQ(trace.stages[1], (PointSet{1, 2, 3, 4}));
  EXPECT_EQ(trace.stages[2], (PointSet{2, 3}));
}

TEST(Tau, StarEmptiesInOneStep) {
  // star points share p_1 but each has its own p_2 value
  EXPECT_EQ(tau_iterate(levels_of(StarFamily{4})).verdict, (TauVerdict{Kind::EmptiedAt, 1}));
}

// Matches the definition stage by stage, shrinks strictly, and an emptied
// iteration rules out closed paths.
TEST(Tau, PropertyAgreesWithDefinition) {
  RandomConfigs gen(31);
  for (int t = 0; t < 300; ++t) {
    const auto config = gen.next(12, 1, 3);
    const auto levels = build_levels(config);
    const auto trace = tau_iterate(levels);
    for (std::size_t s = 0; s + 1 < trace.stages.size(); ++s) {
      ASSERT_EQ(trace.stages[s + 1], naive_tau(config, trace.stages[s]));
      ASSERT_LT(trace.stages[s + 1].size(), trace.stages[s].size());
    }
    ASSERT_EQ(trace.verdict.stage, trace.stages.size() - 1);
    if (trace.emptied()) {
      ASSERT_TRUE(trace.stages.back().empty());
      ASSERT_FALSE(detect_closed_path(levels).witness);
    } else {
      ASSERT_EQ(naive_tau(config, trace.surviving()), trace.surviving());
      ASSERT_FALSE(trace.surviving().empty());
    }
  }
}
