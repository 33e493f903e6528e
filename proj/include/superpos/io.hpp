#pragma once

// JSON reading and writing for configurations and path witnesses. Rationals
// travel as strings ("3", "-1/2"); JSON numbers are rejected.

#include "superpos/errors.hpp"
#include "superpos/model.hpp"
#include "superpos/pathcore.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace superpos {

using Json = nlohmann::ordered_json;

struct ParsedInput {
  Configuration config;
  std::optional<FunctionData> f;
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string& msg) {
  throw InputError(InputErrorCode::Schema, msg);
}

inline Rational rational_from_json(const Json& v, const std::string& where) {
  if (v.is_number_float()) {
    throw InputError(InputErrorCode::FloatingPointValue,
                     where + ": floating-point numbers are not accepted; write the value as a "
                             "rational string such as \"1/3\"");
  }
  if (!v.is_string()) schema_error(where + ": expected a rational string");
  const auto& text = v.get_ref<const std::string&>();
  auto r = Rational::parse(text);
  if (!r) {
    throw InputError(InputErrorCode::MalformedRational,
                     where + ": '" + text + "' is not of the form p or p/q");
  }
  return *r;
}

inline const Json& require_field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_error(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where + ": missing field \"" + key + "\"");
  return *it;
}

inline std::vector<Rational> rational_list(const Json& v, const std::string& where) {
  if (!v.is_array()) schema_error(where + ": expected an array of rational strings");
  std::vector<Rational> out;
  for (std::size_t c = 0; c < v.size(); ++c) {
    out.push_back(rational_from_json(v[c], where + "[" + std::to_string(c) + "]"));
  }
  return out;
}

inline std::size_t index_from_json(const Json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    schema_error(where + ": expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

inline ProjectionSpec projection_from_json(const Json& v, const std::string& where) {
  const auto& type = require_field(v, "type", where);
  if (!type.is_string()) schema_error(where + ".type: expected a string");
  const auto& t = type.get_ref<const std::string&>();
  if (t == "coordinate") {
    return CoordinateProjection{index_from_json(require_field(v, "index", where), where + ".index")};
  }
  if (t == "linear") {
    return LinearProjection{rational_list(require_field(v, "direction", where), where + ".direction")};
  }
  if (t == "table") {
    const auto& values = require_field(v, "values", where);
    if (!values.is_object()) schema_error(where + ".values: expected an object keyed by point id");
    TableProjection table;
    for (auto it = values.begin(); it != values.end(); ++it) {
      table.values.emplace(it.key(), rational_from_json(it.value(), where + ".values." + it.key()));
    }
    return table;
  }
  schema_error(where + ".type: unknown projection type '" + t + "'");
}

}  // namespace detail

inline ParsedInput parse_configuration(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    detail::schema_error(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) detail::schema_error("top level must be an object");

  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) detail::schema_error("name: expected a string");
    name = it->get<std::string>();
  }

  const auto& pts = detail::require_field(doc, "points", "configuration");
  if (!pts.is_array()) detail::schema_error("points: expected an array");
  std::vector<Point> points;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const std::string where = "points[" + std::to_string(j) + "]";
    const auto& id = detail::require_field(pts[j], "id", where);
    if (!id.is_string()) detail::schema_error(where + ".id: expected a string");
    Point p{id.get<std::string>(), std::nullopt};
    if (auto it = pts[j].find("coords"); it != pts[j].end()) {
      p.coords = detail::rational_list(*it, where + ".coords");
    }
    points.push_back(std::move(p));
  }

  const auto& projs = detail::require_field(doc, "projections", "configuration");
  if (!projs.is_array()) detail::schema_error("projections: expected an array");
  std::vector<ProjectionSpec> projections;
  for (std::size_t i = 0; i < projs.size(); ++i) {
    projections.push_back(detail::projection_from_json(projs[i], "projections[" + std::to_string(i) + "]"));
  }

  ParsedInput out{Configuration(std::move(name), std::move(points), std::move(projections)),
                  std::nullopt};

  if (auto it = doc.find("f"); it != doc.end()) {
    if (!it->is_object()) detail::schema_error("f: expected an object keyed by point id");
    FunctionData f{std::vector<Rational>(out.config.size())};
    std::vector<bool> covered(out.config.size(), false);
    for (auto e = it->begin(); e != it->end(); ++e) {
      const auto j = out.config.require_index(e.key());
      f.values[j] = detail::rational_from_json(e.value(), "f." + e.key());
      covered[j] = true;
    }
    for (PointIndex j = 0; j < covered.size(); ++j) {
      if (!covered[j]) {
        throw InputError(InputErrorCode::MissingTableEntry,
                         "f has no value for point '" + out.config.point(j).id + "'");
      }
    }
    out.f = std::move(f);
  }
  return out;
}

inline Json to_json(const Configuration& config, const FunctionData* f = nullptr) {
  Json doc;
  doc["name"] = config.name();
  Json pts = Json::array();
  for (const auto& p : config.points()) {
    Json jp;
    jp["id"] = p.id;
    if (p.coords) {
      Json xs = Json::array();
      for (const auto& x : *p.coords) xs.push_back(x.str());
      jp["coords"] = std::move(xs);
    }
    pts.push_back(std::move(jp));
  }
  doc["points"] = std::move(pts);
  Json projs = Json::array();
  for (const auto& spec : config.projections()) {
    Json js;
    if (const auto* c = std::get_if<CoordinateProjection>(&spec)) {
      js["type"] = "coordinate";
      js["index"] = c->index;
    } else if (const auto* l = std::get_if<LinearProjection>(&spec)) {
      js["type"] = "linear";
      Json dir = Json::array();
      for (const auto& x : l->direction) dir.push_back(x.str());
      js["direction"] = std::move(dir);
    } else {
      const auto& t = std::get<TableProjection>(spec);
      js["type"] = "table";
      Json values = Json::object();
      for (const auto& p : config.points()) values[p.id] = t.values.at(p.id).str();
      js["values"] = std::move(values);
    }
    projs.push_back(std::move(js));
  }
  doc["projections"] = std::move(projs);
  if (f) {
    Json fv = Json::object();
    for (PointIndex j = 0; j < config.size(); ++j) fv[config.point(j).id] = f->values[j].str();
    doc["f"] = std::move(fv);
  }
  return doc;
}

inline Json to_json(const Configuration& config, const PathWitness& w) {
  Json doc;
  Json pts = Json::array();
  for (PointIndex p : w.points) pts.push_back(config.point(p).id);
  doc["points"] = std::move(pts);
  Json lambda = Json::array();
  for (const auto& x : w.weights) lambda.push_back(x.str());
  doc["lambda"] = std::move(lambda);
  Json ex = Json::array();
  for (const auto& set : w.exceptional) {
    Json js = Json::array();
    for (PointIndex p : set) js.push_back(config.point(p).id);
    ex.push_back(std::move(js));
  }
  doc["exceptional"] = std::move(ex);
  doc["kind"] = std::string(to_string(w.kind));
  return doc;
}

inline PathWitness witness_from_json(const Configuration& config, const Json& doc) {
  using detail::require_field;
  using detail::schema_error;
  PathWitness w;
  const auto& pts = require_field(doc, "points", "witness");
  if (!pts.is_array()) schema_error("witness.points: expected an array of point ids");
  for (const auto& id : pts) {
    if (!id.is_string()) schema_error("witness.points: expected point id strings");
    w.points.push_back(config.require_index(id.get<std::string>()));
  }
  const auto& lambda = require_field(doc, "lambda", "witness");
  for (const auto& r : detail::rational_list(lambda, "witness.lambda")) {
    if (!r.is_integer()) {
      throw InputError(InputErrorCode::InvalidWitness, "witness weights must be integers");
    }
    w.weights.push_back(r.numerator());
  }
  if (auto it = doc.find("exceptional"); it != doc.end()) {
    if (!it->is_array()) schema_error("witness.exceptional: expected an array of arrays");
    for (const auto& set : *it) {
      if (!set.is_array()) schema_error("witness.exceptional: expected an array of arrays");
      std::vector<PointIndex> js;
      for (const auto& id : set) {
        if (!id.is_string()) schema_error("witness.exceptional: expected point id strings");
        js.push_back(config.require_index(id.get<std::string>()));
      }
      w.exceptional.push_back(std::move(js));
    }
  } else {
    w.exceptional.assign(config.projection_count(), {});
  }
  const auto& kind = require_field(doc, "kind", "witness");
  if (kind == "closed") {
    w.kind = PathKind::Closed;
  } else if (kind == "open") {
    w.kind = PathKind::Open;
  } else {
    schema_error("witness.kind: expected \"closed\" or \"open\"");
  }
  return w;
}

inline PathWitness parse_witness(const Configuration& config, std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    detail::schema_error(std::string("witness is not valid JSON: ") + e.what());
  }
  return witness_from_json(config, doc);
}

}  // namespace superpos
