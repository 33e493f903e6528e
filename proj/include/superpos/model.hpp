#pragma once

// Finite point configurations, their projection functions and level sets.

#include "superpos/errors.hpp"
#include "superpos/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace superpos {

using PointIndex = std::size_t;

struct Point {
  std::string id;
  std::optional<std::vector<Rational>> coords;
};

struct CoordinateProjection {
  std::size_t index = 0;
};

struct LinearProjection {
  std::vector<Rational> direction;
};

struct TableProjection {
  std::map<std::string, Rational> values;
};

using ProjectionSpec = std::variant<CoordinateProjection, LinearProjection, TableProjection>;

inline bool is_geometric(const ProjectionSpec& spec) {
  return !std::holds_alternative<TableProjection>(spec);
}

// Evaluates one projection at one point. Coordinate and linear projections
// need coordinates; table projections look the point up by id.
inline Rational evaluate_projection(const ProjectionSpec& spec, const Point& point) {
  return std::visit(
      [&](const auto& p) -> Rational {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TableProjection>) {
          auto it = p.values.find(point.id);
          if (it == p.values.end()) {
            throw InputError(InputErrorCode::MissingTableEntry,
                             "table projection has no value for point '" + point.id + "'");
          }
          return it->second;
        } else {
          if (!point.coords) {
            throw InputError(InputErrorCode::MissingCoordinates,
                             "point '" + point.id + "' has no coordinates");
          }
          const auto& x = *point.coords;
          if constexpr (std::is_same_v<T, CoordinateProjection>) {
            if (p.index >= x.size()) {
              throw InputError(InputErrorCode::DimensionMismatch,
                               "coordinate index " + std::to_string(p.index) +
                                   " out of range for dimension " + std::to_string(x.size()));
            }
            return x[p.index];
          } else {
            if (p.direction.size() != x.size()) {
              throw InputError(InputErrorCode::DimensionMismatch,
                               "linear direction of length " +
                                   std::to_string(p.direction.size()) +
                                   " applied to point of dimension " + std::to_string(x.size()));
            }
            Rational acc;
            for (std::size_t c = 0; c < x.size(); ++c) acc += p.direction[c] * x[c];
            return acc;
          }
        }
      },
      spec);
}

// A validated, immutable point configuration with k projections.
class Configuration {
 public:
  Configuration(std::string name, std::vector<Point> points, std::vector<ProjectionSpec> projections)
      : name_(std::move(name)), points_(std::move(points)), projections_(std::move(projections)) {
    validate();
  }

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const std::vector<Point>& points() const noexcept { return points_; }
  [[nodiscard]] const Point& point(PointIndex j) const { return points_.at(j); }
  [[nodiscard]] const std::vector<ProjectionSpec>& projections() const noexcept {
    return projections_;
  }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] std::size_t projection_count() const noexcept { return projections_.size(); }
  // 0 when the points carry no coordinates.
  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }

  [[nodiscard]] std::optional<PointIndex> index_of(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] PointIndex require_index(const std::string& id) const {
    auto idx = index_of(id);
    if (!idx) throw InputError(InputErrorCode::UnknownPoint, "unknown point id '" + id + "'");
    return *idx;
  }

 private:
  void validate() {
    if (points_.empty()) {
      throw InputError(InputErrorCode::EmptyConfiguration, "configuration has no points");
    }
    if (projections_.empty()) {
      throw InputError(InputErrorCode::EmptyConfiguration, "configuration has no projections");
    }
    std::optional<std::size_t> dim;
    bool any_coords = false;
    bool all_coords = true;
    for (PointIndex j = 0; j < points_.size(); ++j) {
      const auto& p = points_[j];
      if (!by_id_.emplace(p.id, j).second) {
        throw InputError(InputErrorCode::DuplicateId, "duplicate point id '" + p.id + "'");
      }
      if (p.coords) {
        any_coords = true;
        if (dim && *dim != p.coords->size()) {
          throw InputError(InputErrorCode::DimensionMismatch,
                           "point '" + p.id + "' has dimension " +
                               std::to_string(p.coords->size()) + ", expected " +
                               std::to_string(*dim));
        }
        dim = p.coords->size();
      } else {
        all_coords = false;
      }
    }
    dimension_ = dim.value_or(0);
    const bool geometric = std::any_of(projections_.begin(), projections_.end(), is_geometric);
    if (geometric && !all_coords) {
      throw InputError(InputErrorCode::MissingCoordinates,
                       "coordinate/linear projections require coordinates on every point");
    }
    if (any_coords && !all_coords) {
      throw InputError(InputErrorCode::DimensionMismatch,
                       "either every point or no point carries coordinates");
    }
    for (const auto& spec : projections_) {
      if (const auto* c = std::get_if<CoordinateProjection>(&spec); c && c->index >= dimension_) {
        throw InputError(InputErrorCode::DimensionMismatch,
                         "coordinate index " + std::to_string(c->index) +
                             " out of range for dimension " + std::to_string(dimension_));
      }
      if (const auto* l = std::get_if<LinearProjection>(&spec);
          l && l->direction.size() != dimension_) {
        throw InputError(InputErrorCode::DimensionMismatch,
                         "linear direction has length " + std::to_string(l->direction.size()) +
                             ", expected " + std::to_string(dimension_));
      }
      if (const auto* t = std::get_if<TableProjection>(&spec)) {
        for (const auto& [id, value] : t->values) {
          if (!by_id_.count(id)) {
            throw InputError(InputErrorCode::UnknownPoint,
                             "table projection names unknown point '" + id + "'");
          }
        }
        for (const auto& p : points_) {
          if (!t->values.count(p.id)) {
            throw InputError(InputErrorCode::MissingTableEntry,
                             "table projection has no value for point '" + p.id + "'");
          }
        }
      }
    }
  }

  std::string name_;
  std::vector<Point> points_;
  std::vector<ProjectionSpec> projections_;
  std::unordered_map<std::string, PointIndex> by_id_;
  std::size_t dimension_ = 0;
};

// Target function values, aligned with Configuration::points().
struct FunctionData {
  std::vector<Rational> values;
};

struct Atom {
  Rational value;
  std::vector<PointIndex> points;  // input order
};

// Level sets p_i^{-1}(a) of every projection, atoms ascending by value.
class LevelPartition {
 public:
  LevelPartition() = default;
  LevelPartition(std::vector<std::vector<Atom>> atoms, std::size_t point_count)
      : atoms_(std::move(atoms)), point_count_(point_count) {
    atom_of_.assign(atoms_.size(), std::vector<std::size_t>(point_count_, 0));
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      for (std::size_t a = 0; a < atoms_[i].size(); ++a) {
        for (PointIndex j : atoms_[i][a].points) atom_of_[i][j] = a;
      }
    }
  }

  [[nodiscard]] std::size_t projection_count() const noexcept { return atoms_.size(); }
  [[nodiscard]] std::size_t point_count() const noexcept { return point_count_; }
  [[nodiscard]] const std::vector<Atom>& atoms(std::size_t i) const { return atoms_.at(i); }
  [[nodiscard]] std::size_t atom_of(std::size_t i, PointIndex j) const { return atom_of_[i][j]; }
  [[nodiscard]] const Rational& value_of(std::size_t i, PointIndex j) const {
    return atoms_[i][atom_of_[i][j]].value;
  }
  [[nodiscard]] std::size_t total_atoms() const {
    std::size_t total = 0;
    for (const auto& a : atoms_) total += a.size();
    return total;
  }

 private:
  std::vector<std::vector<Atom>> atoms_;
  std::vector<std::vector<std::size_t>> atom_of_;
  std::size_t point_count_ = 0;
};

inline LevelPartition build_levels(const Configuration& config) {
  std::vector<std::vector<Atom>> all;
  all.reserve(config.projection_count());
  for (const auto& spec : config.projections()) {
    std::map<Rational, std::vector<PointIndex>> grouped;
    for (PointIndex j = 0; j < config.size(); ++j) {
      grouped[evaluate_projection(spec, config.point(j))].push_back(j);
    }
    std::vector<Atom> atoms;
    atoms.reserve(grouped.size());
    for (auto& [value, members] : grouped) atoms.push_back(Atom{value, std::move(members)});
    all.push_back(std::move(atoms));
  }
  return LevelPartition(std::move(all), config.size());
}

}  // namespace superpos
