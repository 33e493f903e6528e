#pragma once

// Configuration families and exhaustive oracles. The oracles enumerate weight
// vectors directly against the path definitions and share no code with the
// kernel-based detectors they are used to check.

#include "superpos/errors.hpp"
#include "superpos/model.hpp"
#include "superpos/pathcore.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace superpos {

struct Cube5Family {};
struct ChainFamily {
  std::size_t n = 6;
};
struct GridFamily {
  std::size_t rows = 2;
  std::size_t cols = 2;
};
struct StarFamily {
  std::size_t m = 3;
};
struct RandomFamily {
  std::size_t n = 8;
  std::size_t k = 2;
  std::size_t d = 2;  // coordinates per point; projections beyond d are random tables
  std::int64_t min_value = 0;
  std::int64_t max_value = 3;
  std::uint64_t seed = 1;
};

using FamilySpec = std::variant<Cube5Family, ChainFamily, GridFamily, StarFamily, RandomFamily>;

namespace detail {

inline std::vector<Rational> coords(std::initializer_list<std::int64_t> xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

inline std::string point_id(std::size_t one_based) { return "x" + std::to_string(one_based); }

inline std::vector<ProjectionSpec> coordinate_projections(std::size_t k) {
  std::vector<ProjectionSpec> out;
  for (std::size_t i = 0; i < k; ++i) out.emplace_back(CoordinateProjection{i});
  return out;
}

// Uniform integer in [lo, hi] by rejection on the raw 64-bit stream, so the
// sequence depends only on the seed and not on the standard library.
inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return lo + static_cast<std::int64_t>(x % span);
}

}  // namespace detail

inline Configuration generate(const FamilySpec& spec) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw InputError(InputErrorCode::InvalidArgument, msg);
  };
  return std::visit(
      [&](const auto& fam) -> Configuration {
        using T = std::decay_t<decltype(fam)>;
        std::vector<Point> points;
        if constexpr (std::is_same_v<T, Cube5Family>) {
          const std::int64_t xs[5][3] = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}};
          for (std::size_t j = 0; j < 5; ++j) {
            points.push_back({detail::point_id(j + 1), detail::coords({xs[j][0], xs[j][1], xs[j][2]})});
          }
          return Configuration("cube5", std::move(points), detail::coordinate_projections(3));
        } else if constexpr (std::is_same_v<T, ChainFamily>) {
          require(fam.n >= 1, "chain needs n >= 1");
          // x_j = (⌈j/2⌉, ⌊j/2⌋): consecutive points alternate sharing p_1 and p_2.
          for (std::size_t j = 1; j <= fam.n; ++j) {
            const auto a = static_cast<std::int64_t>((j + 1) / 2);
            const auto b = static_cast<std::int64_t>(j / 2);
            points.push_back({detail::point_id(j), detail::coords({a, b})});
          }
          return Configuration("chain" + std::to_string(fam.n), std::move(points),
                               detail::coordinate_projections(2));
        } else if constexpr (std::is_same_v<T, GridFamily>) {
          require(fam.rows >= 1 && fam.cols >= 1, "grid needs rows, cols >= 1");
          std::size_t id = 1;
          for (std::size_t r = 0; r < fam.rows; ++r) {
            for (std::size_t c = 0; c < fam.cols; ++c) {
              points.push_back({detail::point_id(id++),
                                detail::coords({static_cast<std::int64_t>(r),
                                                static_cast<std::int64_t>(c)})});
            }
          }
          return Configuration("grid" + std::to_string(fam.rows) + "x" + std::to_string(fam.cols),
                               std::move(points), detail::coordinate_projections(2));
        } else if constexpr (std::is_same_v<T, StarFamily>) {
          require(fam.m >= 1, "star needs m >= 1");
          for (std::size_t j = 1; j <= fam.m; ++j) {
            points.push_back({detail::point_id(j), detail::coords({0, static_cast<std::int64_t>(j)})});
          }
          return Configuration("star" + std::to_string(fam.m), std::move(points),
                               detail::coordinate_projections(2));
        } else {
          require(fam.n >= 1 && fam.k >= 1, "random needs n, k >= 1");
          require(fam.min_value <= fam.max_value, "random value range is empty");
          std::mt19937_64 rng(fam.seed);
          for (std::size_t j = 1; j <= fam.n; ++j) {
            std::vector<Rational> xs;
            for (std::size_t c = 0; c < fam.d; ++c) {
              xs.emplace_back(detail::uniform(rng, fam.min_value, fam.max_value));
            }
            points.push_back({detail::point_id(j), fam.d ? std::optional(std::move(xs)) : std::nullopt});
          }
          std::vector<ProjectionSpec> projections;
          for (std::size_t i = 0; i < fam.k; ++i) {
            if (i < fam.d) {
              projections.emplace_back(CoordinateProjection{i});
              continue;
            }
            TableProjection table;
            for (const auto& p : points) {
              table.values.emplace(p.id, Rational(detail::uniform(rng, fam.min_value, fam.max_value)));
            }
            projections.emplace_back(std::move(table));
          }
          return Configuration("random-n" + std::to_string(fam.n) + "-k" + std::to_string(fam.k) +
                                   "-s" + std::to_string(fam.seed),
                               std::move(points), std::move(projections));
        }
      },
      spec);
}

// Random function values in [lo, hi], deterministic in the seed.
inline FunctionData random_function(std::size_t n, std::uint64_t seed, std::int64_t lo = -5,
                                    std::int64_t hi = 5) {
  std::mt19937_64 rng(seed);
  FunctionData f;
  for (std::size_t j = 0; j < n; ++j) f.values.emplace_back(detail::uniform(rng, lo, hi));
  return f;
}

struct OracleOptions {
  std::size_t max_points = 8;
  std::int64_t max_bound = 3;
  std::size_t report_cap = 64;
  bool allow_degenerate = false;  // open-path oracle only
};

struct ClosedOracleResult {
  bool found = false;
  std::uint64_t count = 0;              // all satisfying λ
  std::vector<IntVector> witnesses;  // full-length λ, first report_cap in enumeration order
};

struct OpenOracleResult {
  bool found = false;
  std::uint64_t count = 0;
  std::vector<PathWitness> witnesses;
};

namespace detail {

inline void check_oracle_limits(const LevelPartition& levels, std::int64_t bound,
                                const OracleOptions& opts) {
  if (bound < 1) throw InputError(InputErrorCode::InvalidArgument, "weight bound must be >= 1");
  if (levels.point_count() > opts.max_points) {
    throw InputError(InputErrorCode::OracleCapExceeded,
                     std::to_string(levels.point_count()) + " points exceed the oracle cap of " +
                         std::to_string(opts.max_points));
  }
  if (bound > opts.max_bound) {
    throw InputError(InputErrorCode::OracleCapExceeded,
                     "weight bound " + std::to_string(bound) + " exceeds the cap of " +
                         std::to_string(opts.max_bound));
  }
}

// Visits every λ ∈ {-B,…,B}^n \ {0}, last coordinate fastest.
template <typename Visit>
void for_each_weight_vector(std::size_t n, std::int64_t bound, Visit&& visit) {
  std::vector<std::int64_t> lambda(n, -bound);
  while (true) {
    bool nonzero = false;
    for (auto x : lambda) nonzero = nonzero || x != 0;
    if (nonzero) visit(std::as_const(lambda));
    std::size_t pos = n;
    while (pos > 0 && lambda[pos - 1] == bound) {
      lambda[pos - 1] = -bound;
      --pos;
    }
    if (pos == 0) return;
    ++lambda[pos - 1];
  }
}

}  // namespace detail

// Exhaustive closed-path search: Σ_{p_i(x_j) = a} λ_j = 0 for every projection
// i and atom a.
inline ClosedOracleResult oracle_closed_path(const LevelPartition& levels, std::int64_t bound,
                                             const OracleOptions& opts = {}) {
  detail::check_oracle_limits(levels, bound, opts);
  const std::size_t n = levels.point_count();
  const std::size_t k = levels.projection_count();
  ClosedOracleResult out;
  std::vector<std::vector<std::int64_t>> sums(k);
  for (std::size_t i = 0; i < k; ++i) sums[i].resize(levels.atoms(i).size());
  detail::for_each_weight_vector(n, bound, [&](const std::vector<std::int64_t>& lambda) {
    for (std::size_t i = 0; i < k; ++i) {
      std::fill(sums[i].begin(), sums[i].end(), 0);
      for (PointIndex j = 0; j < n; ++j) sums[i][levels.atom_of(i, j)] += lambda[j];
      for (auto s : sums[i]) {
        if (s != 0) return;
      }
    }
    out.found = true;
    ++out.count;
    if (out.witnesses.size() < opts.report_cap) {
      out.witnesses.emplace_back(lambda.begin(), lambda.end());
    }
  });
  return out;
}

// Exhaustive path search: for every λ and every projection i, tries all
// exceptional sets J_i of at most k support points until one makes every
// atom sum of projection i vanish. The projections are independent, so a
// valid tuple exists iff each projection has a valid set. Unless degenerate
// paths are allowed, at least one J_i must leave a support point out.
inline OpenOracleResult oracle_open_path(const LevelPartition& levels, std::int64_t bound,
                                         const OracleOptions& opts = {}) {
  detail::check_oracle_limits(levels, bound, opts);
  const std::size_t n = levels.point_count();
  const std::size_t k = levels.projection_count();
  OpenOracleResult out;
  detail::for_each_weight_vector(n, bound, [&](const std::vector<std::int64_t>& lambda) {
    std::vector<PointIndex> support;
    for (PointIndex j = 0; j < n; ++j) {
      if (lambda[j] != 0) support.push_back(j);
    }
    std::vector<std::vector<PointIndex>> first_valid(k);
    std::vector<std::optional<std::vector<PointIndex>>> proper_valid(k);
    for (std::size_t i = 0; i < k; ++i) {
      bool any = false;
      detail::for_each_small_subset(support.size(), k, [&](const std::vector<std::size_t>& idx) {
        std::vector<bool> removed(n, false);
        for (auto s : idx) removed[support[s]] = true;
        std::vector<std::int64_t> sums(levels.atoms(i).size(), 0);
        for (PointIndex j : support) {
          if (!removed[j]) sums[levels.atom_of(i, j)] += lambda[j];
        }
        for (auto s : sums) {
          if (s != 0) return true;
        }
        std::vector<PointIndex> set;
        for (auto s : idx) set.push_back(support[s]);
        if (!any) {
          first_valid[i] = set;
          any = true;
        }
        if (set.size() < support.size()) {
          proper_valid[i] = set;
          return false;
        }
        return true;
      });
      if (!any) return;
    }
    PathWitness w;
    w.points = support;
    for (PointIndex j : support) w.weights.emplace_back(lambda[j]);
    w.exceptional = first_valid;
    if (!opts.allow_degenerate) {
      std::size_t proper = k;
      for (std::size_t i = 0; i < k && proper == k; ++i) {
        if (proper_valid[i]) proper = i;
      }
      if (proper == k) return;  // only the vacuous choice works
      w.exceptional[proper] = *proper_valid[proper];
    }
    w.kind = w.all_exceptional_empty() ? PathKind::Closed : PathKind::Open;
    out.found = true;
    ++out.count;
    if (out.witnesses.size() < opts.report_cap) out.witnesses.push_back(std::move(w));
  });
  return out;
}

}  // namespace superpos
