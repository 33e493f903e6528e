#pragma once

// Algebraic path detection. A closed path is a nonzero integer vector in the
// kernel of the atom/point incidence matrix; a path is the same with the
// columns of up to k exceptional points per projection blanked in that
// projection's rows.

#include "superpos/bolt2.hpp"
#include "superpos/errors.hpp"
#include "superpos/model.hpp"
#include "superpos/pathcore.hpp"
#include "superpos/ratmat.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace superpos {

struct IncidenceRow {
  std::size_t projection = 0;
  Rational atom;
};

struct IncidenceMatrix {
  RatMatrix matrix;  // rows (projection, atom ascending), columns = points
  std::vector<IncidenceRow> rows;
};

inline IncidenceMatrix build_incidence(const LevelPartition& levels) {
  IncidenceMatrix inc;
  inc.matrix = RatMatrix(levels.total_atoms(), levels.point_count());
  std::size_t row = 0;
  for (std::size_t i = 0; i < levels.projection_count(); ++i) {
    for (const auto& atom : levels.atoms(i)) {
      inc.rows.push_back(IncidenceRow{i, atom.value});
      for (PointIndex j : atom.points) inc.matrix(row, j) = 1;
      ++row;
    }
  }
  return inc;
}

// Restricts a full-length kernel vector to its support.
inline PathWitness witness_from_vector(const IntVector& lambda,
                                       const std::vector<std::vector<PointIndex>>& exceptional) {
  PathWitness w;
  w.exceptional.assign(exceptional.size(), {});
  for (PointIndex j = 0; j < lambda.size(); ++j) {
    if (lambda[j] == 0) continue;
    w.points.push_back(j);
    w.weights.push_back(lambda[j]);
  }
  for (std::size_t i = 0; i < exceptional.size(); ++i) {
    for (PointIndex p : exceptional[i]) {
      if (p < lambda.size() && lambda[p] != 0) w.exceptional[i].push_back(p);
    }
    std::sort(w.exceptional[i].begin(), w.exceptional[i].end());
  }
  w.kind = w.all_exceptional_empty() ? PathKind::Closed : PathKind::Open;
  return w;
}

struct ClosedPathResult {
  std::optional<PathWitness> witness;
  std::size_t kernel_dimension = 0;
};

inline ClosedPathResult detect_closed_path(const LevelPartition& levels) {
  const auto inc = build_incidence(levels);
  const auto basis = right_kernel_basis(inc.matrix);
  ClosedPathResult out;
  out.kernel_dimension = basis.size();
  if (!basis.empty()) {
    out.witness = witness_from_vector(
        basis.front(), std::vector<std::vector<PointIndex>>(levels.projection_count()));
    if (!verify_witness(levels, *out.witness).valid) {
      throw InvariantError("kernel vector failed closed-path verification");
    }
  }
  return out;
}

inline ClosedPathResult detect_closed_path(const Configuration& config) {
  return detect_closed_path(build_levels(config));
}

struct SearchOptions {
  std::uint64_t budget = 100000;  // exceptional-set tuples examined
  std::size_t max_report = 32;
  bool allow_degenerate = false;
};

struct ReportedPath {
  PathWitness witness;
  FunctionalReport functional;
};

struct DetectionReport {
  std::optional<PathWitness> closed_path;
  std::size_t kernel_dimension = 0;
  std::vector<ReportedPath> open_paths;  // longest first, then discovery order
  std::size_t distinct_found = 0;
  std::uint64_t choices_examined = 0;
  bool search_budget_exhausted = false;
};

namespace detail {

// Subsets of [0, n) of size <= max_size in (size, lexicographic) order.
class SubsetCursor {
 public:
  SubsetCursor(std::size_t n, std::size_t max_size) : n_(n), max_size_(std::min(max_size, n)) {}

  [[nodiscard]] const std::vector<PointIndex>& current() const noexcept { return idx_; }

  // Moves to the next subset; on wrap-around returns false and resets to ∅.
  bool advance() {
    const std::size_t size = idx_.size();
    std::size_t pos = size;
    while (pos > 0 && idx_[pos - 1] == n_ - size + pos - 1) --pos;
    if (pos > 0) {
      ++idx_[pos - 1];
      for (std::size_t s = pos; s < size; ++s) idx_[s] = idx_[s - 1] + 1;
      return true;
    }
    if (size < max_size_) {
      idx_.resize(size + 1);
      for (std::size_t s = 0; s <= size; ++s) idx_[s] = s;
      return true;
    }
    idx_.clear();
    return false;
  }

 private:
  std::size_t n_;
  std::size_t max_size_;
  std::vector<PointIndex> idx_;
};

struct ChoiceResult {
  IntVector lambda;           // full length; empty when the reduced kernel is trivial
  std::size_t free_column = 0;
};

// First kernel vector (in right_kernel_basis order) of the incidence matrix
// with projection-i entries of the points in exceptional[i] removed. With
// degenerate filtering, kernel vectors supported inside ⋂_i exceptional[i]
// are skipped.
inline ChoiceResult first_reduced_kernel_vector(
    const LevelPartition& levels, const std::vector<std::size_t>& row_offset,
    const std::vector<std::vector<PointIndex>>& exceptional, bool allow_degenerate) {
  const std::size_t k = levels.projection_count();
  const std::size_t n = levels.point_count();
  ColumnEliminator elim(row_offset.back());
  std::vector<std::pair<std::size_t, Rational>> column;
  column.reserve(k);
  std::vector<std::uint8_t> in_all(n, 0);
  if (!allow_degenerate) {
    std::vector<std::size_t> hits(n, 0);
    for (const auto& set : exceptional) {
      for (PointIndex p : set) ++hits[p];
    }
    for (PointIndex j = 0; j < n; ++j) in_all[j] = hits[j] == k ? 1 : 0;
  }
  for (PointIndex j = 0; j < n; ++j) {
    column.clear();
    for (std::size_t i = 0; i < k; ++i) {
      const auto& set = exceptional[i];
      if (std::find(set.begin(), set.end(), j) != set.end()) continue;
      column.emplace_back(row_offset[i] + levels.atom_of(i, j), Rational(1));
    }
    auto v = elim.append(column);
    if (!v) continue;
    if (!allow_degenerate) {
      bool informative = false;
      for (PointIndex s = 0; s < v->size(); ++s) {
        if (!(*v)[s].is_zero() && !in_all[s]) {
          informative = true;
          break;
        }
      }
      if (!informative) continue;
    }
    v->resize(n);
    return ChoiceResult{primitive_integer(*v), j};
  }
  return {};
}

// Same result as first_reduced_kernel_vector, computed from the RREF of the
// unreduced matrix M. With T its transform, T·M' agrees with RREF(M) outside
// the altered columns (those of exceptional points). Columns are appended
// left to right and the span of the accepted ones is kept as span(E) + span(W):
// E the unit vectors of unaltered pivot columns, W everything else, reduced
// modulo E and in reduced echelon form. Unaltered columns only reach W through
// rows whose pivot column is altered, so |W| stays below twice the number of
// altered columns.
class ReducedKernelFinder {
 public:
  ReducedKernelFinder(const LevelPartition& levels, std::vector<std::size_t> row_offset)
      : levels_(levels), row_offset_(std::move(row_offset)) {
    auto r = rref(build_incidence(levels).matrix);
    rows_ = r.reduced.rows();
    n_ = r.reduced.cols();
    rank_ = r.rank;
    reduced_ = std::move(r.reduced);
    transform_ = std::move(r.transform);
    pivot_col_.assign(rows_, n_);
    pivot_row_.assign(n_, rows_);
    for (std::size_t row = 0; row < rank_; ++row) {
      pivot_col_[row] = r.pivots[row];
      pivot_row_[r.pivots[row]] = row;
    }
  }

  ChoiceResult first(const std::vector<std::vector<PointIndex>>& exceptional, bool allow_degenerate) {
    const std::size_t k = levels_.projection_count();
    blanked_.clear();
    for (std::size_t i = 0; i < k; ++i) {
      for (PointIndex p : exceptional[i]) blanked_.emplace_back(p, row_offset_[i] + levels_.atom_of(i, p));
    }
    std::sort(blanked_.begin(), blanked_.end());
    everywhere_.clear();
    if (!allow_degenerate) {
      for (std::size_t s = 0; s < blanked_.size();) {
        std::size_t e = s;
        while (e < blanked_.size() && blanked_[e].first == blanked_[s].first) ++e;
        if (e - s == k) everywhere_.push_back(blanked_[s].first);
        s = e;
      }
    }
    const PointIndex m = blanked_.empty() ? n_ : blanked_.front().first;

    in_e_.assign(rows_, 0);
    for (PointIndex j = 0; j < m; ++j) {
      const auto row = pivot_row_[j];
      if (row < rows_) {
        in_e_[row] = 1;
        continue;
      }
      // An untouched free column; j is in no exceptional set, so it is informative.
      RatVector v(n_);
      v[j] = 1;
      for (std::size_t r = 0; r < rank_; ++r) {
        if (!reduced_(r, j).is_zero()) v[pivot_col_[r]] = -reduced_(r, j);
      }
      return ChoiceResult{primitive_integer(v), j};
    }

    stable_.assign(rows_, 0);
    for (std::size_t r = rank_; r < rows_; ++r) stable_[r] = 1;
    for (const auto& [p, row] : blanked_) {
      if (pivot_row_[p] < rows_) stable_[pivot_row_[p]] = 1;
    }
    w_.clear();
    w_pivot_.clear();
    raw_.clear();
    raw_col_.clear();

    std::size_t next = 0;
    while (next < blanked_.size() && blanked_[next].first < m) ++next;
    for (PointIndex j = m; j < n_; ++j) {
      const std::size_t from = next;
      while (next < blanked_.size() && blanked_[next].first == j) ++next;
      RatVector raw;
      const auto row = pivot_row_[j];
      if (from == next && row < rows_) {
        const auto a = pivot_owner(row);
        if (a == w_.size() || !is_unit(w_[a], row)) {
          add_to_e(row);
          continue;
        }
        raw.assign(rows_, Rational());
        raw[row] = 1;
      } else {
        raw.resize(rows_);
        for (std::size_t r = 0; r < rows_; ++r) raw[r] = reduced_(r, j);
        for (std::size_t b = from; b < next; ++b) {
          const auto col = blanked_[b].second;
          for (std::size_t r = 0; r < rows_; ++r) {
            if (!transform_(r, col).is_zero()) raw[r] -= transform_(r, col);
          }
        }
        RatVector u = raw;
        for (std::size_t r = 0; r < rows_; ++r) {
          if (in_e_[r]) u[r] = Rational();
        }
        reduce(u);
        if (std::any_of(u.begin(), u.end(), [](const Rational& x) { return !x.is_zero(); })) {
          raw_.push_back(std::move(raw));
          raw_col_.push_back(j);
          insert(std::move(u));
          continue;
        }
      }
      auto lambda = kernel_vector(j, raw);
      if (!allow_degenerate) {
        bool informative = false;
        for (PointIndex s = 0; s < n_ && !informative; ++s) {
          informative = !lambda[s].is_zero() &&
                        !std::binary_search(everywhere_.begin(), everywhere_.end(), s);
        }
        if (!informative) continue;
      }
      return ChoiceResult{primitive_integer(lambda), j};
    }
    return {};
  }

 private:
  [[nodiscard]] std::size_t pivot_owner(std::size_t row) const {
    for (std::size_t a = 0; a < w_.size(); ++a) {
      if (w_pivot_[a] == row) return a;
    }
    return w_.size();
  }

  static bool is_unit(const RatVector& v, std::size_t row) {
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (r != row && !v[r].is_zero()) return false;
    }
    return true;
  }

  void reduce(RatVector& u) const {
    for (std::size_t a = 0; a < w_.size(); ++a) {
      const Rational f = u[w_pivot_[a]];
      if (f.is_zero()) continue;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (!w_[a][r].is_zero()) u[r] -= f * w_[a][r];
      }
    }
  }

  // Prefers rows that can never join E, then the row whose pivot column comes last.
  [[nodiscard]] std::size_t choose_pivot(const RatVector& u) const {
    std::size_t best = rows_;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (u[r].is_zero()) continue;
      if (stable_[r]) return r;
      if (best == rows_ || pivot_col_[r] > pivot_col_[best]) best = r;
    }
    return best;
  }

  void make_pivot(std::size_t a) {
    const auto q = choose_pivot(w_[a]);
    if (q == rows_) throw InvariantError("reduced kernel search lost a spanning vector");
    w_pivot_[a] = q;
    const Rational inv = Rational(1) / w_[a][q];
    if (inv != Rational(1)) {
      for (auto& x : w_[a]) {
        if (!x.is_zero()) x *= inv;
      }
    }
    for (std::size_t b = 0; b < w_.size(); ++b) {
      if (b == a || w_[b][q].is_zero()) continue;
      const Rational f = w_[b][q];
      for (std::size_t r = 0; r < rows_; ++r) {
        if (!w_[a][r].is_zero()) w_[b][r] -= f * w_[a][r];
      }
    }
  }

  void insert(RatVector u) {
    w_.push_back(std::move(u));
    w_pivot_.push_back(rows_);
    make_pivot(w_.size() - 1);
  }

  void add_to_e(std::size_t row) {
    in_e_[row] = 1;
    std::size_t orphan = w_.size();
    for (std::size_t a = 0; a < w_.size(); ++a) {
      if (w_[a][row].is_zero()) continue;
      w_[a][row] = Rational();
      if (w_pivot_[a] == row) orphan = a;
    }
    if (orphan < w_.size()) make_pivot(orphan);
  }

  // The kernel vector with entry 1 at column j and zero at every earlier
  // rejected column: solve for the W coefficients on the coordinates outside
  // E, then read the E coefficients off directly.
  RatVector kernel_vector(PointIndex j, const RatVector& raw_j) const {
    std::vector<std::size_t> outside;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!in_e_[r]) outside.push_back(r);
    }
    RatVector x;
    if (!raw_.empty()) {
      RatMatrix a(outside.size(), raw_.size());
      RatVector rhs(outside.size());
      for (std::size_t t = 0; t < outside.size(); ++t) {
        for (std::size_t c = 0; c < raw_.size(); ++c) a(t, c) = raw_[c][outside[t]];
        rhs[t] = -raw_j[outside[t]];
      }
      auto outcome = solve(a, rhs);
      auto* sol = std::get_if<Solution>(&outcome);
      if (sol == nullptr) throw InvariantError("reduced kernel search found an inconsistent column");
      x = std::move(sol->values);
    }
    RatVector lambda(n_);
    lambda[j] = 1;
    for (std::size_t c = 0; c < raw_.size(); ++c) lambda[raw_col_[c]] = x[c];
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!in_e_[r]) continue;
      Rational y = raw_j[r];
      for (std::size_t c = 0; c < raw_.size(); ++c) {
        if (!raw_[c][r].is_zero() && !x[c].is_zero()) y += x[c] * raw_[c][r];
      }
      lambda[pivot_col_[r]] = -y;
    }
    return lambda;
  }

  const LevelPartition& levels_;
  std::vector<std::size_t> row_offset_;
  std::size_t rows_ = 0;
  std::size_t n_ = 0;
  std::size_t rank_ = 0;
  RatMatrix reduced_;
  RatMatrix transform_;
  std::vector<PointIndex> pivot_col_;  // per row; n_ when none
  std::vector<std::size_t> pivot_row_;  // per column; rows_ when free

  std::vector<std::pair<PointIndex, std::size_t>> blanked_;
  std::vector<PointIndex> everywhere_;
  std::vector<std::uint8_t> in_e_;
  std::vector<std::uint8_t> stable_;
  std::vector<RatVector> w_;
  std::vector<std::size_t> w_pivot_;
  std::vector<RatVector> raw_;
  std::vector<PointIndex> raw_col_;
};

inline std::string witness_key(const PathWitness& w) {
  std::string key;
  for (std::size_t s = 0; s < w.points.size(); ++s) {
    key += std::to_string(w.points[s]) + ":" + w.weights[s].str() + ",";
  }
  for (const auto& set : w.exceptional) {
    key += "|";
    for (PointIndex p : set) key += std::to_string(p) + ",";
  }
  return key;
}

}  // namespace detail

// Enumerates exceptional-set tuples (J_1,…,J_k), each J_i a subset of at most
// k points in (size, lexicographic) order and the tuple ordered
// lexicographically, until the budget is spent. Each tuple contributes the
// first kernel vector of its reduced incidence system, if any. Distinct
// witnesses are verified, ordered longest first (ties by discovery) and
// truncated to max_report. When `f` is absent the functional is evaluated on
// the sign pattern of each witness.
inline DetectionReport search_open_paths(const LevelPartition& levels, const SearchOptions& options,
                                         const FunctionData* f = nullptr) {
  if (options.budget == 0) {
    throw InputError(InputErrorCode::InvalidArgument, "search budget must be at least 1");
  }
  const std::size_t k = levels.projection_count();
  const std::size_t n = levels.point_count();

  DetectionReport report;
  const auto closed = detect_closed_path(levels);
  report.closed_path = closed.witness;
  report.kernel_dimension = closed.kernel_dimension;

  std::vector<std::size_t> row_offset{0};
  for (std::size_t i = 0; i < k; ++i) row_offset.push_back(row_offset.back() + levels.atoms(i).size());

  std::vector<detail::SubsetCursor> cursors(k, detail::SubsetCursor(n, k));
  std::vector<std::vector<PointIndex>> exceptional(k);

  std::vector<PathWitness> found;
  std::set<std::string> seen;
  auto record = [&](const IntVector& lambda) {
    auto w = witness_from_vector(lambda, exceptional);
    const auto check = verify_witness(levels, w);
    if (!check.valid) throw InvariantError("reduced kernel vector failed path verification");
    // J_i is dropped where projection i already cancels without it.
    for (std::size_t i = 0; i < k; ++i) {
      const auto& res = check.residuals[i];
      if (std::all_of(res.begin(), res.end(), [](const AtomResidual& r) { return r.full_sum == 0; })) {
        w.exceptional[i].clear();
      }
    }
    w.kind = w.all_exceptional_empty() ? PathKind::Closed : PathKind::Open;
    if (!options.allow_degenerate && w.is_degenerate()) return;
    if (!seen.insert(detail::witness_key(w)).second) return;
    found.push_back(std::move(w));
  };

  // The unreduced system: while every exceptional point lies beyond its first
  // free column, a tuple reproduces the same kernel vector.
  detail::ReducedKernelFinder finder(levels, row_offset);
  const auto base = finder.first(exceptional, options.allow_degenerate);

  bool complete = false;
  while (report.choices_examined < options.budget) {
    ++report.choices_examined;
    PointIndex min_point = n;
    for (const auto& c : cursors) {
      if (!c.current().empty()) min_point = std::min(min_point, c.current().front());
    }
    for (std::size_t i = 0; i < k; ++i) exceptional[i] = cursors[i].current();
    if (!base.lambda.empty() && min_point > base.free_column) {
      if (min_point == n) record(base.lambda);
    } else {
      const auto r = finder.first(exceptional, options.allow_degenerate);
      if (!r.lambda.empty()) record(r.lambda);
    }
    // odometer: J_k moves fastest
    std::size_t pos = k;
    while (pos > 0 && !cursors[pos - 1].advance()) --pos;
    if (pos == 0) {
      complete = true;
      break;
    }
  }
  report.search_budget_exhausted = !complete;
  report.distinct_found = found.size();

  std::stable_sort(found.begin(), found.end(), [](const PathWitness& a, const PathWitness& b) {
    return a.length() > b.length();
  });
  if (found.size() > options.max_report) found.resize(options.max_report);
  for (auto& w : found) {
    const auto fr = f ? evaluate_functional(w, *f) : evaluate_functional(w, sign_function(w, n));
    report.open_paths.push_back(ReportedPath{std::move(w), fr});
  }
  return report;
}

struct LongestPathResult {
  std::size_t length = 0;
  std::optional<PathWitness> witness;
  // k = 2 with an acyclic level graph: the longest lightning bolt is exact.
  bool exact = false;
  bool budget_exhausted = false;
};

// Longest witness among the reported ones. For k = 2 with an acyclic level
// graph the longest bolt (tree diameter) is exact and replaces a shorter
// search result; otherwise the value is a lower bound.
inline LongestPathResult longest_from_report(const LevelPartition& levels, const DetectionReport& report,
                                             bool allow_degenerate) {
  LongestPathResult out;
  out.budget_exhausted = report.search_budget_exhausted;
  if (!report.open_paths.empty()) {
    out.length = report.open_paths.front().witness.length();
    out.witness = report.open_paths.front().witness;
  }
  if (levels.projection_count() == 2) {
    const auto g = build_level_graph(levels);
    if (!has_cycle(g).found) {
      out.exact = true;
      auto w = bolt_to_path(g, longest_bolt_path(g));
      if (!verify_witness(levels, w).valid) throw InvariantError("longest bolt failed verification");
      if ((allow_degenerate || !w.is_degenerate()) && w.length() > out.length) {
        out.length = w.length();
        out.witness = std::move(w);
      }
    }
  }
  return out;
}

inline LongestPathResult longest_open_path(const LevelPartition& levels, const SearchOptions& options) {
  SearchOptions opts = options;
  opts.max_report = std::max<std::size_t>(opts.max_report, 1);
  return longest_from_report(levels, search_open_paths(levels, opts), options.allow_degenerate);
}

}  // namespace superpos
