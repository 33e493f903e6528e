#pragma once

#include "superpos/superpos.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace superpos::testing {

inline LevelPartition levels_of(const FamilySpec& spec) { return build_levels(generate(spec)); }

inline IntVector ints(std::initializer_list<std::int64_t> xs) {
  IntVector out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

inline IntVector negated(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

// Full-length λ from a witness.
inline IntVector full_lambda(const PathWitness& w, std::size_t n) {
  IntVector out(n);
  for (std::size_t s = 0; s < w.points.size(); ++s) out[w.points[s]] = w.weights[s];
  return out;
}

inline Configuration table_config(const std::vector<std::vector<std::int64_t>>& values) {
  // values[i][j] = p_i(x_{j+1}); no coordinates
  std::vector<Point> points;
  for (std::size_t j = 0; j < values.front().size(); ++j) points.push_back(Point{"x" + std::to_string(j + 1), {}});
  std::vector<ProjectionSpec> projections;
  for (const auto& row : values) {
    TableProjection t;
    for (std::size_t j = 0; j < row.size(); ++j) t.values["x" + std::to_string(j + 1)] = Rational(row[j]);
    projections.emplace_back(std::move(t));
  }
  return Configuration("table", std::move(points), std::move(projections));
}

// Small random configurations for property tests.
struct RandomConfigs {
  std::mt19937_64 rng;
  explicit RandomConfigs(std::uint64_t seed) : rng(seed) {}

  Configuration next(std::size_t max_n, std::size_t min_k, std::size_t max_k, std::int64_t max_value = 3) {
    const std::size_t n = 1 + rng() % max_n;
    const std::size_t k = min_k + rng() % (max_k - min_k + 1);
    return generate(RandomFamily{n, k, k, 0, max_value, rng()});
  }
};

}  // namespace superpos::testing
