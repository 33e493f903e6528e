#pragma once

// Full analysis of one configuration: closed paths, τ-iteration, rank,
// the two-projection level graph and the bounded path search, with
// cross-checks between the sections.

#include "superpos/bolt2.hpp"
#include "superpos/detect.hpp"
#include "superpos/errors.hpp"
#include "superpos/io.hpp"
#include "superpos/model.hpp"
#include "superpos/represent.hpp"
#include "superpos/tau.hpp"

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace superpos {

struct LevelGraphSummary {
  bool forest = false;
  std::optional<std::size_t> longest_bolt;
  std::optional<PathWitness> cycle;
};

struct AnalysisReport {
  std::string name;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  ClosedPathResult closed;
  TauTrace tau;
  RankReport rank;
  std::optional<LevelGraphSummary> k2;
  DetectionReport paths;
  LongestPathResult longest;
  std::optional<Rational> min_delta_ratio;
};

inline void check_consistency(const AnalysisReport& r) {
  auto fail = [](const std::string& what) { throw InvariantError("inconsistent analysis: " + what); };
  const bool closed = r.closed.witness.has_value();
  if (closed != (r.closed.kernel_dimension > 0)) fail("closed path vs kernel dimension");
  if (closed != (r.rank.rank < r.n)) fail("closed path vs representation rank");
  if (r.rank.rank + r.closed.kernel_dimension != r.n) fail("rank + kernel dimension != n");
  if (r.tau.emptied() && closed) fail("tau emptied but a closed path exists");
  if (r.k2) {
    if (r.k2->forest == closed) fail("level-graph cycle vs closed path");
    if (r.k2->forest != r.tau.emptied()) fail("level-graph forest vs tau verdict");
  }
}

inline AnalysisReport analyze(const Configuration& config, const SearchOptions& options) {
  const auto levels = build_levels(config);
  AnalysisReport r;
  r.name = config.name();
  r.n = config.size();
  r.k = config.projection_count();
  r.d = config.dimension();
  r.closed = detect_closed_path(levels);
  r.tau = tau_iterate(levels);
  r.rank = representability_rank_report(levels);
  if (r.k == 2) {
    const auto g = build_level_graph(levels);
    LevelGraphSummary s;
    const auto cycle = has_cycle(g);
    s.forest = !cycle.found;
    if (cycle.found) {
      s.cycle = cycle_to_closed_path(g, cycle.cycle);
      if (!verify_witness(levels, *s.cycle).valid) throw InvariantError("level-graph cycle failed verification");
    } else {
      s.longest_bolt = longest_bolt(g);
    }
    r.k2 = std::move(s);
  }
  r.paths = search_open_paths(levels, options);
  r.longest = longest_from_report(levels, r.paths, options.allow_degenerate);
  for (const auto& p : r.paths.open_paths) {
    if (!r.min_delta_ratio || p.functional.delta_ratio < *r.min_delta_ratio) {
      r.min_delta_ratio = p.functional.delta_ratio;
    }
  }
  check_consistency(r);
  return r;
}

// ---- rendering --------------------------------------------------------------

inline Json ids_json(const Configuration& config, const std::vector<PointIndex>& pts) {
  Json out = Json::array();
  for (PointIndex p : pts) out.push_back(config.point(p).id);
  return out;
}

inline Json functional_json(const FunctionalReport& f) {
  Json out;
  out["value"] = f.value.str();
  out["norm"] = f.norm.str();
  out["b_lambda_k"] = f.b_lambda_k.str();
  out["delta_ratio"] = f.delta_ratio.str();
  return out;
}

inline Json closed_json(const Configuration& config, const ClosedPathResult& c) {
  Json out;
  out["found"] = c.witness.has_value();
  out["kernel_dimension"] = c.kernel_dimension;
  out["witness"] = c.witness ? to_json(config, *c.witness) : Json(nullptr);
  return out;
}

inline Json tau_json(const Configuration& config, const TauTrace& t) {
  Json out;
  out["verdict"] = t.emptied() ? "emptied" : "fixed_point";
  out["stage"] = t.verdict.stage;
  Json stages = Json::array();
  for (const auto& s : t.stages) stages.push_back(ids_json(config, s));
  out["stages"] = std::move(stages);
  return out;
}

inline Json paths_json(const Configuration& config, const DetectionReport& d,
                       const LongestPathResult& longest, const std::optional<Rational>& min_ratio) {
  Json out;
  out["choices_examined"] = d.choices_examined;
  out["budget_exhausted"] = d.search_budget_exhausted;
  out["distinct_found"] = d.distinct_found;
  out["min_delta_ratio"] = min_ratio ? Json(min_ratio->str()) : Json(nullptr);
  Json lp;
  lp["length"] = longest.length;
  lp["exact"] = longest.exact;
  lp["witness"] = longest.witness ? to_json(config, *longest.witness) : Json(nullptr);
  out["longest"] = std::move(lp);
  Json ws = Json::array();
  for (const auto& p : d.open_paths) {
    Json jw;
    jw["witness"] = to_json(config, p.witness);
    jw["functional"] = functional_json(p.functional);
    ws.push_back(std::move(jw));
  }
  out["witnesses"] = std::move(ws);
  return out;
}

inline Json to_json(const Configuration& config, const AnalysisReport& r) {
  Json out;
  Json c;
  c["name"] = r.name;
  c["n"] = r.n;
  c["k"] = r.k;
  c["d"] = r.d;
  out["configuration"] = std::move(c);
  out["closed_path"] = closed_json(config, r.closed);
  out["tau"] = tau_json(config, r.tau);
  Json rk;
  rk["rank"] = r.rank.rank;
  rk["n"] = r.rank.points;
  rk["universally_representable"] = r.rank.universally_representable;
  out["rank"] = std::move(rk);
  if (r.k2) {
    Json k2;
    k2["forest"] = r.k2->forest;
    k2["longest_bolt"] = r.k2->longest_bolt ? Json(*r.k2->longest_bolt) : Json(nullptr);
    k2["cycle"] = r.k2->cycle ? to_json(config, *r.k2->cycle) : Json(nullptr);
    out["k2"] = std::move(k2);
  } else {
    out["k2"] = nullptr;
  }
  out["paths"] = paths_json(config, r.paths, r.longest, r.min_delta_ratio);
  return out;
}

inline std::string describe(const Configuration& config, const PathWitness& w) {
  std::ostringstream os;
  os << to_string(w.kind) << " length=" << w.length() << " [";
  for (std::size_t s = 0; s < w.points.size(); ++s) {
    if (s) os << ' ';
    os << config.point(w.points[s]).id << ':' << w.weights[s];
  }
  os << ']';
  if (!w.all_exceptional_empty()) {
    os << " J=";
    for (std::size_t i = 0; i < w.exceptional.size(); ++i) {
      os << (i ? "," : "") << '{';
      for (std::size_t s = 0; s < w.exceptional[i].size(); ++s) {
        os << (s ? " " : "") << config.point(w.exceptional[i][s]).id;
      }
      os << '}';
    }
  }
  return os.str();
}

inline std::string describe(const Configuration& config, const std::vector<PointIndex>& pts) {
  std::string s;
  for (PointIndex p : pts) s += (s.empty() ? "" : " ") + config.point(p).id;
  return s.empty() ? "(empty)" : s;
}

inline void render_tau(std::ostream& os, const Configuration& config, const TauTrace& t) {
  if (t.emptied()) {
    os << "tau: emptied at step " << t.verdict.stage << '\n';
  } else {
    os << "tau: fixed point at stage " << t.verdict.stage << " with " << t.surviving().size()
       << " surviving points\n";
  }
  for (std::size_t s = 0; s < t.stages.size(); ++s) {
    os << "  stage " << s << ": " << describe(config, t.stages[s]) << '\n';
  }
}

inline void render_paths(std::ostream& os, const Configuration& config, const DetectionReport& d,
                         const LongestPathResult& longest, const std::optional<Rational>& min_ratio) {
  os << "paths: " << d.distinct_found << " distinct found over " << d.choices_examined
     << " exceptional-set choices" << (d.search_budget_exhausted ? " (budget exhausted)" : " (complete)")
     << '\n';
  os << "  longest: " << longest.length << (longest.exact ? " (exact bolt length)" : " (lower bound)")
     << '\n';
  if (min_ratio) os << "  min delta ratio: " << *min_ratio << '\n';
  for (const auto& p : d.open_paths) {
    os << "  " << describe(config, p.witness) << " norm=" << p.functional.norm
       << " b=" << p.functional.b_lambda_k << " ratio=" << p.functional.delta_ratio << '\n';
  }
}

inline void render(std::ostream& os, const Configuration& config, const AnalysisReport& r) {
  os << "configuration: " << (r.name.empty() ? "(unnamed)" : r.name) << " n=" << r.n << " k=" << r.k
     << " d=" << r.d << '\n';
  if (r.closed.witness) {
    os << "closed path: " << describe(config, *r.closed.witness)
       << " kernel-dimension=" << r.closed.kernel_dimension << '\n';
  } else {
    os << "closed path: none (kernel-dimension=0)\n";
  }
  render_tau(os, config, r.tau);
  os << "rank: " << r.rank.rank << '/' << r.rank.points << ", universally representable: "
     << (r.rank.universally_representable ? "yes" : "no") << '\n';
  if (r.k2) {
    if (r.k2->forest) {
      os << "level graph: forest, longest bolt " << *r.k2->longest_bolt << '\n';
    } else {
      os << "level graph: cycle " << describe(config, *r.k2->cycle) << '\n';
    }
  }
  render_paths(os, config, r.paths, r.longest, r.min_delta_ratio);
}

inline std::string summary_line(const AnalysisReport& r) {
  std::ostringstream os;
  os << (r.closed.witness ? "closed-path" : "no-closed-path") << " rank=" << r.rank.rank << '/'
     << r.rank.points << " tau=" << (r.tau.emptied() ? "emptied" : "fixed-point");
  return os.str();
}

}  // namespace superpos
