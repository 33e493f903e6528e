#pragma once

// Closed paths and paths: weighted point sets whose atom sums cancel under
// every projection, either exactly (closed) or after setting aside at most k
// exceptional points per projection (open).

#include "superpos/errors.hpp"
#include "superpos/model.hpp"
#include "superpos/ratmat.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace superpos {

enum class PathKind { Closed, Open };

inline std::string_view to_string(PathKind kind) {
  return kind == PathKind::Closed ? "closed" : "open";
}

struct PathWitness {
  std::vector<PointIndex> points;                // distinct configuration indices
  IntVector weights;                             // same length, not all zero
  std::vector<std::vector<PointIndex>> exceptional;  // one set per projection, each ⊆ points
  PathKind kind = PathKind::Closed;

  [[nodiscard]] std::size_t length() const noexcept { return points.size(); }

  [[nodiscard]] bool all_exceptional_empty() const {
    return std::all_of(exceptional.begin(), exceptional.end(),
                       [](const auto& j) { return j.empty(); });
  }

  // Every point of the path is exceptional for every projection, so the
  // cancellation conditions say nothing.
  [[nodiscard]] bool is_degenerate() const {
    if (points.empty() || exceptional.empty()) return false;
    for (const auto& set : exceptional) {
      for (PointIndex p : points) {
        if (std::find(set.begin(), set.end(), p) == set.end()) return false;
      }
    }
    return true;
  }

  friend bool operator==(const PathWitness&, const PathWitness&) = default;
};

struct AtomResidual {
  std::size_t atom = 0;
  Rational atom_value;
  Integer full_sum;     // Σ λ_j over path points in the atom
  Integer reduced_sum;  // the same sum with exceptional points removed
};

struct VerifyReport {
  bool valid = false;
  // Per projection: atoms whose full sum is nonzero, or whose reduced sum is.
  std::vector<std::vector<AtomResidual>> residuals;
};

// Structural checks shared by verification and functional evaluation.
inline void check_witness_shape(const PathWitness& w, std::size_t point_count, std::size_t k) {
  auto fail = [](const std::string& msg) { throw InputError(InputErrorCode::InvalidWitness, msg); };
  if (w.points.empty()) fail("path has no points");
  if (w.weights.size() != w.points.size()) fail("weight count differs from point count");
  if (std::any_of(w.weights.begin(), w.weights.end(), [](const Integer& x) { return x == 0; })) {
    fail("path points must carry nonzero weights");
  }
  std::set<PointIndex> seen;
  for (PointIndex p : w.points) {
    if (p >= point_count) fail("point index " + std::to_string(p) + " out of range");
    if (!seen.insert(p).second) fail("point index " + std::to_string(p) + " repeated");
  }
  if (w.exceptional.size() != k) {
    fail("expected " + std::to_string(k) + " exceptional sets, got " +
         std::to_string(w.exceptional.size()));
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto& set = w.exceptional[i];
    if (set.size() > k) {
      fail("exceptional set " + std::to_string(i) + " has " + std::to_string(set.size()) +
           " points; a path allows at most k = " + std::to_string(k));
    }
    std::set<PointIndex> unique(set.begin(), set.end());
    if (unique.size() != set.size()) fail("exceptional set " + std::to_string(i) + " repeats a point");
    for (PointIndex p : set) {
      if (!seen.count(p)) fail("exceptional point " + std::to_string(p) + " is not on the path");
    }
  }
  if (w.kind == PathKind::Closed && !w.all_exceptional_empty()) {
    fail("a closed path cannot have exceptional points");
  }
}

inline VerifyReport verify_witness(const LevelPartition& levels, const PathWitness& w) {
  const std::size_t k = levels.projection_count();
  check_witness_shape(w, levels.point_count(), k);
  VerifyReport report;
  report.valid = true;
  report.residuals.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Integer> full(levels.atoms(i).size());
    std::vector<Integer> reduced(levels.atoms(i).size());
    std::vector<bool> touched(levels.atoms(i).size(), false);
    const auto& ex = w.exceptional[i];
    for (std::size_t s = 0; s < w.points.size(); ++s) {
      const auto a = levels.atom_of(i, w.points[s]);
      touched[a] = true;
      full[a] += w.weights[s];
      if (std::find(ex.begin(), ex.end(), w.points[s]) == ex.end()) reduced[a] += w.weights[s];
    }
    for (std::size_t a = 0; a < full.size(); ++a) {
      if (!touched[a] || (full[a] == 0 && reduced[a] == 0)) continue;
      report.residuals[i].push_back(AtomResidual{a, levels.atoms(i)[a].value, full[a], reduced[a]});
      if (reduced[a] != 0) report.valid = false;
    }
  }
  return report;
}

inline VerifyReport verify_witness(const Configuration& config, const LevelPartition& levels,
                                   const PathWitness& w) {
  if (config.size() != levels.point_count()) {
    throw InputError(InputErrorCode::InvalidArgument, "level partition does not match configuration");
  }
  return verify_witness(levels, w);
}

struct FunctionalReport {
  Rational value;      // Σ λ_j f(x_j)
  Integer norm;        // Σ |λ_j|
  Integer b_lambda_k;  // sum of the k largest |λ_j|
  Rational delta_ratio;
};

inline Integer functional_norm(const IntVector& weights) {
  Integer total = 0;
  for (const auto& x : weights) total += abs(x);
  return total;
}

inline Integer largest_weight_sum(const IntVector& weights, std::size_t k) {
  IntVector mags;
  mags.reserve(weights.size());
  for (const auto& x : weights) mags.push_back(abs(x));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  Integer total = 0;
  for (std::size_t s = 0; s < std::min(k, mags.size()); ++s) total += mags[s];
  return total;
}

inline FunctionalReport evaluate_functional(const PathWitness& w, const FunctionData& f) {
  FunctionalReport r;
  for (std::size_t s = 0; s < w.points.size(); ++s) {
    if (w.points[s] >= f.values.size()) {
      throw InputError(InputErrorCode::MissingTableEntry,
                       "function has no value for path point " + std::to_string(w.points[s]));
    }
    if (w.weights[s] != 0) r.value += Rational(w.weights[s]) * f.values[w.points[s]];
  }
  r.norm = functional_norm(w.weights);
  r.b_lambda_k = largest_weight_sum(w.weights, w.exceptional.size());
  if (r.norm == 0) throw InputError(InputErrorCode::InvalidWitness, "weight vector is zero");
  r.delta_ratio = Rational(r.b_lambda_k, r.norm);
  return r;
}

// The sign pattern f(x_j) = sign(λ_j) on the path (zero elsewhere); the
// functional attains its norm on it.
inline FunctionData sign_function(const PathWitness& w, std::size_t point_count) {
  FunctionData f{std::vector<Rational>(point_count)};
  for (std::size_t s = 0; s < w.points.size(); ++s) f.values[w.points[s]] = w.weights[s].sign();
  return f;
}

namespace detail {

// Visits subsets of [0, n) of size <= max_size, ordered by size and then
// lexicographically, until visit returns false.
template <typename Visit>
bool for_each_small_subset(std::size_t n, std::size_t max_size, Visit&& visit) {
  std::vector<std::size_t> idx;
  for (std::size_t size = 0; size <= std::min(max_size, n); ++size) {
    idx.resize(size);
    for (std::size_t s = 0; s < size; ++s) idx[s] = s;
    while (true) {
      if (!visit(std::as_const(idx))) return false;
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t s = pos; s < size; ++s) idx[s] = idx[s - 1] + 1;
    }
  }
  return true;
}

}  // namespace detail

// Adds up to k points (weight 1 each) to a closed path and looks for
// exceptional sets, drawn from the added points and the path points sharing an
// atom with them, that turn the union into a path. Returns std::nullopt if no
// assignment of size <= k per projection exists.
inline std::optional<PathWitness> extend_closed_to_paths(const LevelPartition& levels,
                                                         const PathWitness& closed,
                                                         const std::vector<PointIndex>& extra) {
  const std::size_t k = levels.projection_count();
  if (extra.size() > k) {
    throw InputError(InputErrorCode::InvalidArgument,
                     "at most k = " + std::to_string(k) + " points may be added, got " +
                         std::to_string(extra.size()));
  }
  if (closed.kind != PathKind::Closed || !verify_witness(levels, closed).valid) {
    throw InputError(InputErrorCode::InvalidWitness, "extension requires a valid closed path");
  }
  for (PointIndex p : extra) {
    if (p >= levels.point_count()) {
      throw InputError(InputErrorCode::InvalidArgument, "extra point index out of range");
    }
    if (std::find(closed.points.begin(), closed.points.end(), p) != closed.points.end()) {
      throw InputError(InputErrorCode::InvalidArgument, "extra point already on the path");
    }
  }
  if (std::set<PointIndex>(extra.begin(), extra.end()).size() != extra.size()) {
    throw InputError(InputErrorCode::InvalidArgument, "extra points repeat");
  }

  PathWitness out = closed;
  out.kind = PathKind::Open;
  out.exceptional.assign(k, {});
  for (PointIndex p : extra) {
    out.points.push_back(p);
    out.weights.emplace_back(1);
  }
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<PointIndex> candidates(extra.begin(), extra.end());
    for (PointIndex p : closed.points) {
      for (PointIndex e : extra) {
        if (levels.atom_of(i, p) == levels.atom_of(i, e)) {
          candidates.push_back(p);
          break;
        }
      }
    }
    std::sort(candidates.begin(), candidates.end());
    std::optional<std::vector<PointIndex>> found;
    detail::for_each_small_subset(candidates.size(), k, [&](const std::vector<std::size_t>& idx) {
      PathWitness trial = out;
      trial.exceptional.assign(k, {});
      for (auto s : idx) trial.exceptional[i].push_back(candidates[s]);
      const auto rep = verify_witness(levels, trial);
      // Only projection i's residuals matter here.
      const bool ok = std::all_of(rep.residuals[i].begin(), rep.residuals[i].end(),
                                  [](const AtomResidual& r) { return r.reduced_sum == 0; });
      if (ok) {
        found = trial.exceptional[i];
        return false;
      }
      return true;
    });
    if (!found) return std::nullopt;
    out.exceptional[i] = *found;
  }
  return out;
}

}  // namespace superpos
