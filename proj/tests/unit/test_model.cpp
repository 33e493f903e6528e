#include "support.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace superpos;
using superpos::testing::RandomConfigs;

namespace {

Point pt(std::string id, std::initializer_list<std::int64_t> xs) {
  std::vector<Rational> c;
  for (auto x : xs) c.emplace_back(x);
  return Point{std::move(id), c};
}

InputErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no InputError thrown";
  return InputErrorCode::Schema;
}

}  // namespace

TEST(Model, Cube5Levels) {
  const auto config = generate(Cube5Family{});
  const auto levels = build_levels(config);
  ASSERT_EQ(levels.projection_count(), 3u);
  ASSERT_EQ(levels.point_count(), 5u);
  EXPECT_EQ(levels.total_atoms(), 6u);
  // p_1: x = 0 on x1,x2,x3; x = 1 on x4,x5
  ASSERT_EQ(levels.atoms(0).size(), 2u);
  EXPECT_EQ(levels.atoms(0)[0].value, Rational(0));
  EXPECT_EQ(levels.atoms(0)[0].points, (std::vector<PointIndex>{0, 1, 2}));
  EXPECT_EQ(levels.atoms(0)[1].points, (std::vector<PointIndex>{3, 4}));
  EXPECT_EQ(levels.atoms(1)[0].points, (std::vector<PointIndex>{0, 1, 3}));
  EXPECT_EQ(levels.atoms(2)[0].points, (std::vector<PointIndex>{0, 2, 3}));
  EXPECT_EQ(levels.atom_of(2, 4), 1u);
  EXPECT_EQ(levels.value_of(1, 2), Rational(1));
}

TEST(Model, LinearProjection) {
  const LinearProjection l{{Rational(1), Rational(1, 2)}};
  EXPECT_EQ(evaluate_projection(l, pt("a", {2, 4})), Rational(4));
  const Configuration config("lin", {pt("a", {2, 4}), pt("b", {3, 2})}, {l});
  const auto levels = build_levels(config);
  ASSERT_EQ(levels.atoms(0).size(), 1u);
  EXPECT_EQ(levels.atoms(0)[0].points.size(), 2u);
}

TEST(Model, AtomsAscendByValue) {
  const auto config = superpos::testing::table_config({{5, -1, 3, -1}});
  const auto levels = build_levels(config);
  ASSERT_EQ(levels.atoms(0).size(), 3u);
  EXPECT_EQ(levels.atoms(0)[0].value, Rational(-1));
  EXPECT_EQ(levels.atoms(0)[0].points, (std::vector<PointIndex>{1, 3}));
  EXPECT_EQ(levels.atoms(0)[2].value, Rational(5));
}

TEST(Model, ValidationErrors) {
  const std::vector<ProjectionSpec> x0{CoordinateProjection{0}};
  EXPECT_EQ(code_of([&] { Configuration("c", {}, x0); }), InputErrorCode::EmptyConfiguration);
  EXPECT_EQ(code_of([&] { Configuration("c", {pt("a", {1})}, {}); }), InputErrorCode::EmptyConfiguration);
  EXPECT_EQ(code_of([&] { Configuration("c", {pt("a", {1}), pt("a", {2})}, x0); }),
            InputErrorCode::DuplicateId);
  EXPECT_EQ(code_of([&] { Configuration("c", {pt("a", {1}), pt("b", {2, 3})}, x0); }),
            InputErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { Configuration("c", {pt("a", {1})}, {CoordinateProjection{1}}); }),
            InputErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] {
              Configuration("c", {pt("a", {1, 2})}, {LinearProjection{{Rational(1)}}});
            }),
            InputErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { Configuration("c", {Point{"a", std::nullopt}}, x0); }),
            InputErrorCode::MissingCoordinates);

  TableProjection t;
  t.values["a"] = Rational(1);
  EXPECT_EQ(code_of([&] { Configuration("c", {Point{"a", {}}, Point{"b", {}}}, {t}); }),
            InputErrorCode::MissingTableEntry);
  t.values["zzz"] = Rational(1);
  t.values["b"] = Rational(2);
  EXPECT_EQ(code_of([&] { Configuration("c", {Point{"a", {}}, Point{"b", {}}}, {t}); }),
            InputErrorCode::UnknownPoint);
}

TEST(Model, IndexLookup) {
  const auto config = generate(ChainFamily{4});
  EXPECT_EQ(config.require_index("x3"), 2u);
  EXPECT_FALSE(config.index_of("x9"));
  EXPECT_EQ(code_of([&] { (void)config.require_index("x9"); }), InputErrorCode::UnknownPoint);
  EXPECT_EQ(config.dimension(), 2u);
}

// Atoms partition the points, for every projection.
TEST(Model, PropertyAtomsPartitionPoints) {
  RandomConfigs gen(11);
  for (int t = 0; t < 200; ++t) {
    const auto config = gen.next(15, 1, 4);
    const auto levels = build_levels(config);
    for (std::size_t i = 0; i < levels.projection_count(); ++i) {
      std::vector<int> seen(config.size(), 0);
      for (std::size_t a = 0; a < levels.atoms(i).size(); ++a) {
        if (a > 0) ASSERT_LT(levels.atoms(i)[a - 1].value, levels.atoms(i)[a].value);
        for (PointIndex j : levels.atoms(i)[a].points) {
          ++seen[j];
          ASSERT_EQ(levels.atom_of(i, j), a);
          ASSERT_EQ(levels.value_of(i, j), evaluate_projection(config.projections()[i], config.point(j)));
        }
      }
      for (int s : seen) ASSERT_EQ(s, 1);
    }
  }
}
