#pragma once

// Two projections: points become edges of a bipartite multigraph between the
// atoms of p_1 (left) and the atoms of p_2 (right). Lightning bolts are simple
// paths in this graph, closed bolts are cycles.

#include "superpos/errors.hpp"
#include "superpos/model.hpp"
#include "superpos/pathcore.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace superpos {

class CyclicGraphError : public std::runtime_error {
 public:
  CyclicGraphError()
      : std::runtime_error("level graph has a cycle; bolt lengths are unbounded") {}
};

struct LevelEdge {
  std::size_t left = 0;   // atom index under p_1
  std::size_t right = 0;  // atom index under p_2
};

struct LevelGraph {
  std::vector<Rational> left_values;
  std::vector<Rational> right_values;
  std::vector<LevelEdge> edges;  // edge j is point j

  [[nodiscard]] std::size_t vertex_count() const { return left_values.size() + right_values.size(); }
  // Vertex ids: left atoms first, then right atoms.
  [[nodiscard]] std::size_t left_vertex(std::size_t e) const { return edges[e].left; }
  [[nodiscard]] std::size_t right_vertex(std::size_t e) const {
    return left_values.size() + edges[e].right;
  }
  [[nodiscard]] std::size_t other_end(std::size_t e, std::size_t v) const {
    return v == left_vertex(e) ? right_vertex(e) : left_vertex(e);
  }

  // incidence[v] = edges at v, ascending.
  [[nodiscard]] std::vector<std::vector<std::size_t>> incidence() const {
    std::vector<std::vector<std::size_t>> inc(vertex_count());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      inc[left_vertex(e)].push_back(e);
      inc[right_vertex(e)].push_back(e);
    }
    return inc;
  }
};

inline LevelGraph build_level_graph(const LevelPartition& levels) {
  if (levels.projection_count() != 2) {
    throw InputError(InputErrorCode::InvalidArgument,
                     "level graph needs exactly 2 projections, got " +
                         std::to_string(levels.projection_count()));
  }
  LevelGraph g;
  for (const auto& a : levels.atoms(0)) g.left_values.push_back(a.value);
  for (const auto& a : levels.atoms(1)) g.right_values.push_back(a.value);
  for (PointIndex j = 0; j < levels.point_count(); ++j) {
    g.edges.push_back(LevelEdge{levels.atom_of(0, j), levels.atom_of(1, j)});
  }
  return g;
}

struct CycleResult {
  bool found = false;
  std::vector<PointIndex> cycle;  // edges in traversal order
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Edge sequence of the unique path from `from` to `to` using only tree edges.
inline std::vector<std::size_t> tree_path(const LevelGraph& g, const std::vector<bool>& in_tree,
                                          std::size_t from, std::size_t to) {
  const auto inc = g.incidence();
  std::vector<std::optional<std::size_t>> via(g.vertex_count());
  std::vector<bool> seen(g.vertex_count(), false);
  std::queue<std::size_t> q;
  q.push(from);
  seen[from] = true;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    if (v == to) break;
    for (auto e : inc[v]) {
      if (!in_tree[e]) continue;
      const auto w = g.other_end(e, v);
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = e;
      q.push(w);
    }
  }
  std::vector<std::size_t> path;
  for (auto v = to; v != from;) {
    const auto e = *via[v];
    path.push_back(e);
    v = g.other_end(e, v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// Farthest vertex from `start` (ties: smallest vertex id) and the edge path to it.
inline std::pair<std::size_t, std::vector<std::size_t>> farthest(
    const LevelGraph& g, const std::vector<std::vector<std::size_t>>& inc, std::size_t start) {
  std::vector<std::optional<std::size_t>> via(g.vertex_count());
  std::vector<std::size_t> depth(g.vertex_count(), 0);
  std::vector<bool> seen(g.vertex_count(), false);
  std::queue<std::size_t> q;
  q.push(start);
  seen[start] = true;
  std::size_t best = start;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    if (depth[v] > depth[best] || (depth[v] == depth[best] && v < best)) best = v;
    for (auto e : inc[v]) {
      const auto w = g.other_end(e, v);
      if (seen[w]) continue;
      seen[w] = true;
      depth[w] = depth[v] + 1;
      via[w] = e;
      q.push(w);
    }
  }
  std::vector<std::size_t> path;
  for (auto v = best; v != start;) {
    const auto e = *via[v];
    path.push_back(e);
    v = g.other_end(e, v);
  }
  std::reverse(path.begin(), path.end());
  return {best, path};
}

}  // namespace detail

// Spanning-forest cycle search: edges are added in point order and the first
// edge joining two already-connected atoms closes the reported cycle. The
// cycle is rotated to start at its smallest point and oriented towards the
// smaller of that point's two neighbours.
inline CycleResult has_cycle(const LevelGraph& g) {
  detail::DisjointSets sets(g.vertex_count());
  std::vector<bool> in_tree(g.edges.size(), false);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (sets.unite(g.left_vertex(e), g.right_vertex(e))) {
      in_tree[e] = true;
      continue;
    }
    auto cycle = detail::tree_path(g, in_tree, g.right_vertex(e), g.left_vertex(e));
    cycle.insert(cycle.begin(), e);
    const auto first = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), first, cycle.end());
    if (cycle.size() > 2 && cycle.back() < cycle[1]) std::reverse(cycle.begin() + 1, cycle.end());
    return CycleResult{true, std::vector<PointIndex>(cycle.begin(), cycle.end())};
  }
  return {};
}

// Longest simple path (in edges = points) over all components, with the edge
// sequence realising it. The graph must be a forest.
inline std::vector<PointIndex> longest_bolt_path(const LevelGraph& g) {
  if (has_cycle(g).found) throw CyclicGraphError();
  const auto inc = g.incidence();
  std::vector<bool> visited(g.vertex_count(), false);
  std::vector<PointIndex> best;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (visited[v] || inc[v].empty()) continue;
    const auto [end1, unused] = detail::farthest(g, inc, v);
    const auto [end2, path] = detail::farthest(g, inc, end1);
    // mark component
    std::queue<std::size_t> q;
    q.push(v);
    visited[v] = true;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (auto e : inc[u]) {
        const auto w = g.other_end(e, u);
        if (!visited[w]) {
          visited[w] = true;
          q.push(w);
        }
      }
    }
    if (path.size() > best.size()) best.assign(path.begin(), path.end());
  }
  return best;
}

inline std::size_t longest_bolt(const LevelGraph& g) { return longest_bolt_path(g).size(); }

namespace detail {

// Consecutive edges must share an atom, alternating between the two sides.
// Returns the shared side (0 = left, 1 = right) of each consecutive pair.
inline std::vector<int> bolt_joints(const LevelGraph& g, const std::vector<PointIndex>& edges,
                                    bool closed) {
  std::vector<int> joints;
  const std::size_t m = edges.size();
  const std::size_t pairs = closed ? m : m - 1;
  for (std::size_t s = 0; s < pairs; ++s) {
    const auto a = edges[s];
    const auto b = edges[(s + 1) % m];
    const bool share_left = g.edges[a].left == g.edges[b].left;
    const bool share_right = g.edges[a].right == g.edges[b].right;
    int side = -1;
    if (share_left && !share_right) side = 0;
    if (share_right && !share_left) side = 1;
    if (share_left && share_right) {
      // parallel edges: take whichever keeps the alternation
      side = joints.empty() ? 0 : 1 - joints.back();
    }
    if (side < 0 || (!joints.empty() && side == joints.back())) {
      throw InputError(InputErrorCode::InvalidWitness,
                       "edges " + std::to_string(a) + " and " + std::to_string(b) +
                           " do not continue an alternating bolt");
    }
    joints.push_back(side);
  }
  return joints;
}

}  // namespace detail

// Alternating ±1 weights along a cycle of the level graph.
inline PathWitness cycle_to_closed_path(const LevelGraph& g, const std::vector<PointIndex>& cycle) {
  if (cycle.size() < 2 || cycle.size() % 2 != 0) {
    throw InputError(InputErrorCode::InvalidWitness, "a level-graph cycle has even length >= 2");
  }
  if (std::set<PointIndex>(cycle.begin(), cycle.end()).size() != cycle.size()) {
    throw InputError(InputErrorCode::InvalidWitness, "cycle repeats a point");
  }
  for (auto e : cycle) {
    if (e >= g.edges.size()) throw InputError(InputErrorCode::InvalidWitness, "cycle edge out of range");
  }
  if (cycle.size() == 2) {
    const auto& a = g.edges[cycle[0]];
    const auto& b = g.edges[cycle[1]];
    if (a.left != b.left || a.right != b.right) {
      throw InputError(InputErrorCode::InvalidWitness, "2-cycle needs parallel edges");
    }
  } else {
    detail::bolt_joints(g, cycle, true);
  }
  PathWitness w;
  w.kind = PathKind::Closed;
  w.exceptional.assign(2, {});
  for (std::size_t s = 0; s < cycle.size(); ++s) {
    w.points.push_back(cycle[s]);
    w.weights.emplace_back(s % 2 == 0 ? 1 : -1);
  }
  return w;
}

// Alternating ±1 weights along an open bolt; each end's unshared atom goes
// into the exceptional set of its projection.
inline PathWitness bolt_to_path(const LevelGraph& g, const std::vector<PointIndex>& bolt) {
  if (bolt.empty()) throw InputError(InputErrorCode::InvalidWitness, "empty bolt");
  PathWitness w;
  w.kind = PathKind::Open;
  w.exceptional.assign(2, {});
  for (std::size_t s = 0; s < bolt.size(); ++s) {
    w.points.push_back(bolt[s]);
    w.weights.emplace_back(s % 2 == 0 ? 1 : -1);
  }
  if (bolt.size() == 1) {
    w.exceptional[0] = {bolt[0]};
    w.exceptional[1] = {bolt[0]};
    return w;
  }
  const auto joints = detail::bolt_joints(g, bolt, false);
  // The first edge's free end is on the side opposite its first joint.
  w.exceptional[static_cast<std::size_t>(1 - joints.front())].push_back(bolt.front());
  w.exceptional[static_cast<std::size_t>(1 - joints.back())].push_back(bolt.back());
  for (auto& set : w.exceptional) std::sort(set.begin(), set.end());
  return w;
}

// Graphviz text: atoms as vertices, points as labelled edges.
inline std::string to_dot(const LevelGraph& g, const Configuration& config) {
  std::ostringstream os;
  os << "graph levels {\n";
  for (std::size_t a = 0; a < g.left_values.size(); ++a) {
    os << "  L" << a << " [label=\"p1=" << g.left_values[a] << "\"];\n";
  }
  for (std::size_t a = 0; a < g.right_values.size(); ++a) {
    os << "  R" << a << " [label=\"p2=" << g.right_values[a] << "\"];\n";
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    os << "  L" << g.edges[e].left << " -- R" << g.edges[e].right << " [label=\""
       << config.point(e).id << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace superpos
