#pragma once

// Dense exact rational linear algebra: reduced row echelon form, kernels and
// linear solves that return a left-combination certificate when the system is
// inconsistent.

#include "superpos/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace superpos {

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  [[nodiscard]] RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
  }

  [[nodiscard]] RatVector multiply(std::span<const Rational> v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    RatVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Rational acc;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!(*this)(r, c).is_zero() && !v[c].is_zero()) acc += (*this)(r, c) * v[c];
      }
      out[r] = acc;
    }
    return out;
  }

  // vᵀ·M
  [[nodiscard]] RatVector left_multiply(std::span<const Rational> v) const {
    if (v.size() != rows_) throw std::invalid_argument("vector-matrix dimension mismatch");
    RatVector out(cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (v[r].is_zero()) continue;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!(*this)(r, c).is_zero()) out[c] += v[r] * (*this)(r, c);
      }
    }
    return out;
  }

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline RatVector to_rational(std::span<const Integer> v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

namespace detail {

inline std::optional<IntVector> primitive_integer_small(std::span<const Rational> v) {
  using Wide = __int128;
  constexpr Wide limit = INT64_MAX;
  Wide lcm = 1;
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    if (x.is_big()) return std::nullopt;
    const Wide d = x.inline_denominator();
    lcm = lcm / std::gcd(static_cast<std::int64_t>(lcm), static_cast<std::int64_t>(d)) * d;
    if (lcm > limit) return std::nullopt;
  }
  std::vector<std::int64_t> scaled(v.size(), 0);
  std::uint64_t g = 0;
  int first_sign = 0;
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (v[s].is_zero()) continue;
    const Wide value = Wide(v[s].inline_numerator()) * (lcm / v[s].inline_denominator());
    if (value > limit || value < -limit) return std::nullopt;
    scaled[s] = static_cast<std::int64_t>(value);
    if (first_sign == 0) first_sign = value > 0 ? 1 : -1;
    g = std::gcd(g, static_cast<std::uint64_t>(value < 0 ? -value : value));
  }
  IntVector out(v.size());
  if (g == 0) return out;
  const auto div = static_cast<std::int64_t>(g) * first_sign;
  for (std::size_t s = 0; s < v.size(); ++s) {
    if (scaled[s] != 0) out[s] = scaled[s] / div;
  }
  return out;
}

}  // namespace detail

// Scales a nonzero rational vector to the primitive integer vector on the same
// ray whose first nonzero entry is positive. The zero vector maps to zeros.
inline IntVector primitive_integer(std::span<const Rational> v) {
  if (auto small = detail::primitive_integer_small(v)) return std::move(*small);
  Integer lcm = 1;
  for (const auto& x : v) {
    if (!x.is_zero()) lcm = boost::multiprecision::lcm(lcm, x.denominator());
  }
  IntVector out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer scaled = x.numerator() * (lcm / x.denominator());
    g = boost::multiprecision::gcd(g, scaled);
    out.push_back(std::move(scaled));
  }
  if (g == 0) return out;
  int first_sign = 0;
  for (const auto& x : out) {
    if (x != 0) {
      first_sign = x.sign();
      break;
    }
  }
  if (first_sign < 0) g = -g;
  for (auto& x : out) x /= g;
  return out;
}

struct RrefResult {
  RatMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  RatMatrix transform;  // transform · input == reduced
};

// Gauss-Jordan elimination. Pivot rule: columns left to right; within a
// column, the first row at or below the current pivot row with a nonzero entry.
inline RrefResult rref(const RatMatrix& m, bool track_transform = true) {
  RrefResult out{m, 0, {}, track_transform ? RatMatrix::identity(m.rows()) : RatMatrix()};
  auto& a = out.reduced;
  auto& t = out.transform;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  auto swap_rows = [](RatMatrix& x, std::size_t r1, std::size_t r2) {
    for (std::size_t c = 0; c < x.cols(); ++c) std::swap(x(r1, c), x(r2, c));
  };
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pick = row;
    while (pick < rows && a(pick, col).is_zero()) ++pick;
    if (pick == rows) continue;
    if (pick != row) {
      swap_rows(a, pick, row);
      if (track_transform) swap_rows(t, pick, row);
    }
    const Rational inv = Rational(1) / a(row, col);
    if (inv != Rational(1)) {
      for (std::size_t c = col; c < cols; ++c) {
        if (!a(row, c).is_zero()) a(row, c) *= inv;
      }
      if (track_transform) {
        for (std::size_t c = 0; c < rows; ++c) {
          if (!t(row, c).is_zero()) t(row, c) *= inv;
        }
      }
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const Rational factor = a(r, col);
      for (std::size_t c = col; c < cols; ++c) {
        if (!a(row, c).is_zero()) a(r, c) -= factor * a(row, c);
      }
      if (track_transform) {
        for (std::size_t c = 0; c < rows; ++c) {
          if (!t(row, c).is_zero()) t(r, c) -= factor * t(row, c);
        }
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = out.pivots.size();
  return out;
}

inline std::size_t rank(const RatMatrix& m) { return rref(m, false).rank; }

// Null-space basis from the RREF: one vector per free column c, with entry 1
// at c and -R[r][c] at the pivot column of row r; each scaled to a primitive
// integer vector.
inline std::vector<IntVector> right_kernel_basis(const RatMatrix& m) {
  const auto r = rref(m, false);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<IntVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols());
    v[free] = 1;
    for (std::size_t row = 0; row < r.rank; ++row) v[r.pivots[row]] = -r.reduced(row, free);
    basis.push_back(primitive_integer(v));
  }
  return basis;
}

inline std::vector<IntVector> left_kernel_basis(const RatMatrix& m) {
  return right_kernel_basis(m.transpose());
}

struct Solution {
  RatVector values;
  std::vector<std::size_t> pivot_columns;
  std::vector<std::size_t> free_columns;
};

struct Inconsistent {
  IntVector left_combination;  // cᵀ·M = 0, cᵀ·rhs != 0
};

using SolveOutcome = std::variant<Solution, Inconsistent>;

// Solves M·x = rhs exactly. Free variables are pinned to zero. When the system
// is inconsistent, the row of the accumulated transform that produced the
// contradiction 0 = 1 is returned as a primitive integer left combination.
inline SolveOutcome solve(const RatMatrix& m, std::span<const Rational> rhs) {
  if (rhs.size() != m.rows()) {
    throw std::invalid_argument("solve: rhs has length " + std::to_string(rhs.size()) +
                                ", matrix has " + std::to_string(m.rows()) + " rows");
  }
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  const auto red = rref(aug, true);
  for (std::size_t row = 0; row < red.rank; ++row) {
    if (red.pivots[row] == m.cols()) {
      const auto t_row = red.transform.row(row);
      return Inconsistent{primitive_integer(t_row)};
    }
  }
  Solution s;
  s.values.assign(m.cols(), Rational());
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t row = 0; row < red.rank; ++row) {
    s.values[red.pivots[row]] = red.reduced(row, m.cols());
    s.pivot_columns.push_back(red.pivots[row]);
    is_pivot[red.pivots[row]] = true;
  }
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (!is_pivot[c]) s.free_columns.push_back(c);
  }
  return s;
}

// Column-at-a-time Gauss-Jordan elimination over a fixed row count, following
// the same pivot rule as rref(). Each appended column is either a new pivot or
// yields the null-space vector that right_kernel_basis() would produce for that
// free column. Columns are given sparsely as (row, value) pairs; the cost of an
// append is O(rows · nnz) plus O(rows²) for a new pivot, independent of the
// number of columns already seen.
class ColumnEliminator {
 public:
  explicit ColumnEliminator(std::size_t rows) : rows_(rows), transform_(RatMatrix::identity(rows)) {}

  using SparseColumn = std::span<const std::pair<std::size_t, Rational>>;

  // Returns std::nullopt when the column became a pivot, otherwise the
  // (unnormalized) kernel vector over the columns appended so far.
  std::optional<RatVector> append(SparseColumn column) {
    const std::size_t col = column_count_++;
    RatVector reduced(rows_);
    for (const auto& [r, value] : column) {
      if (value.is_zero()) continue;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!transform_(i, r).is_zero()) reduced[i] += transform_(i, r) * value;
      }
    }
    const std::size_t rank = pivots_.size();
    std::size_t pick = rank;
    while (pick < rows_ && reduced[pick].is_zero()) ++pick;
    if (pick == rows_) {
      RatVector v(col + 1);
      v[col] = 1;
      for (std::size_t i = 0; i < rank; ++i) v[pivots_[i]] = -reduced[i];
      return v;
    }
    if (pick != rank) {
      for (std::size_t c = 0; c < rows_; ++c) std::swap(transform_(pick, c), transform_(rank, c));
      std::swap(reduced[pick], reduced[rank]);
    }
    const Rational inv = Rational(1) / reduced[rank];
    if (inv != Rational(1)) {
      for (std::size_t c = 0; c < rows_; ++c) {
        if (!transform_(rank, c).is_zero()) transform_(rank, c) *= inv;
      }
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == rank || reduced[i].is_zero()) continue;
      const Rational factor = reduced[i];
      for (std::size_t c = 0; c < rows_; ++c) {
        if (!transform_(rank, c).is_zero()) transform_(i, c) -= factor * transform_(rank, c);
      }
    }
    pivots_.push_back(col);
    return std::nullopt;
  }

  [[nodiscard]] std::size_t rank() const noexcept { return pivots_.size(); }
  [[nodiscard]] std::size_t columns() const noexcept { return column_count_; }

 private:
  std::size_t rows_;
  RatMatrix transform_;
  std::vector<std::size_t> pivots_;
  std::size_t column_count_ = 0;
};

}  // namespace superpos
