#pragma once

// The pruning set functions
//   τ_i(Z) = { x ∈ Z : |p_i^{-1}(p_i(x)) ∩ Z| >= 2 },   τ(Z) = ⋂_i τ_i(Z),
// and their iteration X ⊇ τ(X) ⊇ τ²(X) ⊇ … . Emptying after finitely many
// steps is a sufficient condition for every function on X to be a linear
// superposition.

#include "superpos/model.hpp"

#include <cstddef>
#include <vector>

namespace superpos {

using PointSet = std::vector<PointIndex>;  // ascending

inline PointSet tau_i(const LevelPartition& levels, const PointSet& z, std::size_t i) {
  std::vector<std::size_t> count(levels.atoms(i).size(), 0);
  for (PointIndex j : z) ++count[levels.atom_of(i, j)];
  PointSet out;
  for (PointIndex j : z) {
    if (count[levels.atom_of(i, j)] >= 2) out.push_back(j);
  }
  return out;
}

inline PointSet tau_step(const LevelPartition& levels, const PointSet& z) {
  std::vector<bool> keep(levels.point_count(), false);
  for (PointIndex j : z) keep[j] = true;
  for (std::size_t i = 0; i < levels.projection_count(); ++i) {
    std::vector<std::size_t> count(levels.atoms(i).size(), 0);
    for (PointIndex j : z) ++count[levels.atom_of(i, j)];
    for (PointIndex j : z) {
      if (count[levels.atom_of(i, j)] < 2) keep[j] = false;
    }
  }
  PointSet out;
  for (PointIndex j : z) {
    if (keep[j]) out.push_back(j);
  }
  return out;
}

struct TauVerdict {
  enum class Kind { EmptiedAt, FixedPointReached };
  Kind kind = Kind::EmptiedAt;
  // EmptiedAt: the n with τⁿ(X) = ∅. FixedPointReached: the stage m with τ(Z_m) = Z_m.
  std::size_t stage = 0;

  friend bool operator==(const TauVerdict&, const TauVerdict&) = default;
};

struct TauTrace {
  std::vector<PointSet> stages;  // Z_0 = X, Z_1, …, the terminal stage last
  TauVerdict verdict;

  [[nodiscard]] bool emptied() const { return verdict.kind == TauVerdict::Kind::EmptiedAt; }
  [[nodiscard]] const PointSet& surviving() const { return stages.back(); }
};

inline TauTrace tau_iterate(const LevelPartition& levels) {
  TauTrace trace;
  PointSet z(levels.point_count());
  for (PointIndex j = 0; j < z.size(); ++j) z[j] = j;
  trace.stages.push_back(z);
  while (!z.empty()) {
    auto next = tau_step(levels, z);
    if (next.size() == z.size()) {
      trace.verdict = {TauVerdict::Kind::FixedPointReached, trace.stages.size() - 1};
      return trace;
    }
    z = std::move(next);
    trace.stages.push_back(z);
  }
  trace.verdict = {TauVerdict::Kind::EmptiedAt, trace.stages.size() - 1};
  return trace;
}

}  // namespace superpos
