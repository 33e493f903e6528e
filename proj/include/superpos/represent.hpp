#pragma once

// Representation of a function on a finite configuration as Σ_i g_i(p_i(x)).
// The unknowns are the values g_i(a) on every atom; the system is consistent
// exactly when the function is annihilated by every closed path, and an
// inconsistent system yields such a path as a certificate.

#include "superpos/errors.hpp"
#include "superpos/model.hpp"
#include "superpos/pathcore.hpp"
#include "superpos/ratmat.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace superpos {

struct RepresentationColumn {
  std::size_t projection = 0;
  Rational atom;
};

struct RepresentationSystem {
  RatMatrix matrix;  // one row per point, one column per (projection, atom)
  std::vector<RepresentationColumn> columns;
};

inline RepresentationSystem build_representation_system(const LevelPartition& levels) {
  RepresentationSystem sys;
  sys.matrix = RatMatrix(levels.point_count(), levels.total_atoms());
  std::size_t col = 0;
  for (std::size_t i = 0; i < levels.projection_count(); ++i) {
    for (const auto& atom : levels.atoms(i)) {
      sys.columns.push_back(RepresentationColumn{i, atom.value});
      for (PointIndex j : atom.points) sys.matrix(j, col) = 1;
      ++col;
    }
  }
  return sys;
}

struct GEntry {
  Rational atom;
  Rational value;
};

// g[i] lists g_i on the atoms of projection i, ascending by atom.
struct GTables {
  std::vector<std::vector<GEntry>> g;

  [[nodiscard]] Rational evaluate(const LevelPartition& levels, PointIndex j) const {
    Rational total;
    for (std::size_t i = 0; i < g.size(); ++i) total += g[i][levels.atom_of(i, j)].value;
    return total;
  }
};

struct Certificate {
  PathWitness witness;  // closed
  Rational functional_value;
};

using RepresentationResult = std::variant<GTables, Certificate>;

inline Certificate make_certificate(const LevelPartition& levels, const IntVector& lambda,
                                    const FunctionData& f) {
  Certificate c;
  c.witness.kind = PathKind::Closed;
  c.witness.exceptional.assign(levels.projection_count(), {});
  for (PointIndex j = 0; j < lambda.size(); ++j) {
    if (lambda[j] == 0) continue;
    c.witness.points.push_back(j);
    c.witness.weights.push_back(lambda[j]);
  }
  c.functional_value = evaluate_functional(c.witness, f).value;
  return c;
}

inline RepresentationResult solve_representation(const LevelPartition& levels, const FunctionData& f) {
  if (f.values.size() != levels.point_count()) {
    throw InputError(InputErrorCode::MissingTableEntry,
                     "function covers " + std::to_string(f.values.size()) + " of " +
                         std::to_string(levels.point_count()) + " points");
  }
  const auto sys = build_representation_system(levels);
  const auto outcome = solve(sys.matrix, f.values);
  if (const auto* bad = std::get_if<Inconsistent>(&outcome)) {
    auto cert = make_certificate(levels, bad->left_combination, f);
    if (!verify_witness(levels, cert.witness).valid || cert.functional_value.is_zero()) {
      throw InvariantError("inconsistency certificate failed verification");
    }
    return cert;
  }
  const auto& sol = std::get<Solution>(outcome);
  GTables tables;
  tables.g.resize(levels.projection_count());
  for (std::size_t c = 0; c < sys.columns.size(); ++c) {
    tables.g[sys.columns[c].projection].push_back(GEntry{sys.columns[c].atom, sol.values[c]});
  }
  for (PointIndex j = 0; j < levels.point_count(); ++j) {
    if (tables.evaluate(levels, j) != f.values[j]) {
      throw InvariantError("g tables do not reproduce f at point " + std::to_string(j));
    }
  }
  return tables;
}

// Every closed path in the left-kernel basis of the representation system,
// paired with its functional value on f (zero values included).
inline std::vector<Certificate> certificate_basis(const LevelPartition& levels, const FunctionData& f) {
  const auto sys = build_representation_system(levels);
  std::vector<Certificate> out;
  for (const auto& lambda : left_kernel_basis(sys.matrix)) {
    out.push_back(make_certificate(levels, lambda, f));
  }
  return out;
}

struct RankReport {
  std::size_t rank = 0;
  std::size_t points = 0;
  bool universally_representable = false;
};

inline RankReport representability_rank_report(const LevelPartition& levels) {
  const auto sys = build_representation_system(levels);
  RankReport r;
  r.rank = rank(sys.matrix);
  r.points = levels.point_count();
  r.universally_representable = r.rank == r.points;
  return r;
}

}  // namespace superpos
