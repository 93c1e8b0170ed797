#pragma once

// Planar 3-connected graphs with an explicit, oriented face list.
//
// Faces are cyclic vertex sequences, counterclockwise when seen from outside
// the polytope (or counterclockwise in the plane, for interior faces of a 2d
// drawing; the outer face then runs clockwise). With that convention the face
// containing the directed edge i->j lies to its left.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polydual/errors.hpp"

namespace polydual {

using VertexId = std::int64_t;
using Index = std::size_t;
using FaceIndex = std::size_t;

struct Edge {
  Index a, b;  // a < b
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed edge from -> to together with its two incident faces.
struct DirectedEdgeContext {
  Index from, to;
  FaceIndex left, right;
};

// Center vertex and its neighbours in counterclockwise order, so that
// (center, base[k], base[k+1]) is a face of the host triangulation.
struct Wheel {
  Index center;
  std::vector<Index> base;
};

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& code) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.code == code; });
  }
  std::string summary() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v.code << ": " << v.message << "\n";
    return os.str();
  }
};

class PlanarGraph {
 public:
  PlanarGraph() = default;

  // Vertex ids are kept as given; faces are listed by vertex id. Only
  // problems that make indexing impossible throw here (duplicate or unknown
  // ids). Everything else is left for validate() to report.
  PlanarGraph(std::vector<VertexId> ids, const std::vector<std::vector<VertexId>>& faces) : ids_(std::move(ids)) {
    for (Index i = 0; i < ids_.size(); ++i) {
      if (!index_.emplace(ids_[i], i).second)
        throw PreconditionError("duplicate_vertex", "vertex id " + std::to_string(ids_[i]) + " listed twice");
    }
    faces_.reserve(faces.size());
    for (const auto& f : faces) {
      std::vector<Index> cycle;
      cycle.reserve(f.size());
      for (VertexId id : f) cycle.push_back(index(id));
      faces_.push_back(std::move(cycle));
    }
    build();
  }

  std::size_t num_vertices() const { return ids_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_faces() const { return faces_.size(); }

  VertexId id(Index v) const { return ids_.at(v); }
  const std::vector<VertexId>& ids() const { return ids_; }

  std::optional<Index> find(VertexId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  Index index(VertexId id) const {
    auto v = find(id);
    if (!v) throw PreconditionError("unknown_vertex", "vertex id " + std::to_string(id) + " is not defined");
    return *v;
  }

  const std::vector<Index>& face(FaceIndex f) const { return faces_.at(f); }
  const std::vector<std::vector<Index>>& faces() const { return faces_; }
  std::vector<VertexId> face_ids(FaceIndex f) const {
    std::vector<VertexId> out;
    for (Index v : faces_.at(f)) out.push_back(ids_[v]);
    return out;
  }

  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<std::size_t> edge_index(Index a, Index b) const {
    auto it = edge_index_.find(key(std::min(a, b), std::max(a, b)));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  bool has_edge(Index a, Index b) const { return edge_index(a, b).has_value(); }

  // Face whose boundary contains the directed edge from -> to.
  std::optional<FaceIndex> left_face(Index from, Index to) const {
    auto it = left_.find(key(from, to));
    if (it == left_.end()) return std::nullopt;
    return it->second;
  }

  DirectedEdgeContext context(Index from, Index to) const {
    auto l = left_face(from, to);
    auto r = left_face(to, from);
    if (!l || !r)
      throw PreconditionError("missing_edge", "directed edge " + std::to_string(id(from)) + "->" +
                                                  std::to_string(id(to)) + " is not bounded by two faces");
    return {from, to, *l, *r};
  }

  // Position of v in face f.
  std::size_t position(FaceIndex f, Index v) const {
    const auto& c = faces_.at(f);
    auto it = std::find(c.begin(), c.end(), v);
    if (it == c.end()) throw ConsistencyError("graph", "vertex not on face");
    return static_cast<std::size_t>(it - c.begin());
  }
  Index next_on_face(FaceIndex f, Index v) const {
    const auto& c = faces_[f];
    return c[(position(f, v) + 1) % c.size()];
  }
  Index prev_on_face(FaceIndex f, Index v) const {
    const auto& c = faces_[f];
    return c[(position(f, v) + c.size() - 1) % c.size()];
  }

  // Faces around v in counterclockwise order (seen from outside). Requires a
  // valid graph.
  std::vector<FaceIndex> faces_around(Index v) const {
    const FaceIndex start = incident_face_.at(v);
    std::vector<FaceIndex> out;
    FaceIndex f = start;
    do {
      out.push_back(f);
      const Index w = prev_on_face(f, v);
      auto next = left_face(v, w);
      if (!next) throw ConsistencyError("graph", "open vertex star");
      f = *next;
      if (out.size() > faces_.size()) throw ConsistencyError("graph", "vertex star does not close");
    } while (f != start);
    return out;
  }

  // Neighbours of v in counterclockwise order.
  std::vector<Index> rotation(Index v) const {
    std::vector<Index> out;
    for (FaceIndex f : faces_around(v)) out.push_back(next_on_face(f, v));
    return out;
  }

  std::size_t degree(Index v) const { return adjacency_.at(v).size(); }
  const std::vector<Index>& neighbours(Index v) const { return adjacency_.at(v); }
  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& a : adjacency_) d = std::max(d, a.size());
    return d;
  }

  bool is_simplicial() const {
    return std::all_of(faces_.begin(), faces_.end(), [](const auto& f) { return f.size() == 3; });
  }

  // Face with the given cycle (any rotation, same orientation).
  std::optional<FaceIndex> find_face(std::span<const Index> cycle) const {
    for (FaceIndex f = 0; f < faces_.size(); ++f) {
      const auto& c = faces_[f];
      if (c.size() != cycle.size() || c.empty()) continue;
      auto it = std::find(c.begin(), c.end(), cycle[0]);
      if (it == c.end()) continue;
      const std::size_t off = static_cast<std::size_t>(it - c.begin());
      bool same = true;
      for (std::size_t k = 0; k < c.size() && same; ++k) same = c[(off + k) % c.size()] == cycle[k];
      if (same) return f;
    }
    return std::nullopt;
  }
  std::optional<FaceIndex> find_face_by_ids(std::span<const VertexId> cycle) const {
    std::vector<Index> idx;
    for (VertexId id : cycle) {
      auto v = find(id);
      if (!v) return std::nullopt;
      idx.push_back(*v);
    }
    return find_face(idx);
  }

  // Structural facts gathered while indexing, consumed by validate().
  const std::vector<Violation>& build_problems() const { return problems_; }

 private:
  static std::uint64_t key(Index a, Index b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

  void build() {
    const std::size_t n = ids_.size();
    incident_face_.assign(n, SIZE_MAX);
    adjacency_.assign(n, {});
    std::map<std::pair<Index, Index>, int> undirected;
    for (FaceIndex f = 0; f < faces_.size(); ++f) {
      const auto& c = faces_[f];
      if (c.size() < 3) {
        problems_.push_back({"short_face", "face " + std::to_string(f) + " has fewer than 3 vertices"});
        continue;
      }
      for (std::size_t k = 0; k < c.size(); ++k) {
        const Index a = c[k], b = c[(k + 1) % c.size()];
        if (a == b) {
          problems_.push_back({"degenerate_face", "face " + std::to_string(f) + " repeats a vertex"});
          continue;
        }
        if (incident_face_[a] == SIZE_MAX) incident_face_[a] = f;
        if (!left_.emplace(key(a, b), f).second)
          problems_.push_back({"orientation", "directed edge " + std::to_string(ids_[a]) + "->" +
                                                  std::to_string(ids_[b]) + " appears on two faces"});
        undirected[{std::min(a, b), std::max(a, b)}]++;
      }
      std::vector<Index> sorted = c;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        problems_.push_back({"degenerate_face", "face " + std::to_string(f) + " repeats a vertex"});
    }
    for (const auto& [e, count] : undirected) {
      edge_index_.emplace(key(e.first, e.second), edges_.size());
      edges_.push_back({e.first, e.second});
      adjacency_[e.first].push_back(e.second);
      adjacency_[e.second].push_back(e.first);
      if (!left_.count(key(e.first, e.second)) || !left_.count(key(e.second, e.first)))
        problems_.push_back({"orientation", "edge " + std::to_string(ids_[e.first]) + "-" +
                                                std::to_string(ids_[e.second]) +
                                                " is not traversed once in each direction"});
    }
  }

  std::vector<VertexId> ids_;
  std::unordered_map<VertexId, Index> index_;
  std::vector<std::vector<Index>> faces_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> edge_index_;
  std::unordered_map<std::uint64_t, FaceIndex> left_;
  std::vector<FaceIndex> incident_face_;
  std::vector<std::vector<Index>> adjacency_;
  std::vector<Violation> problems_;
};

namespace detail {

// True if the graph minus `removed` is connected and has no cut vertex.
inline bool biconnected_without(const PlanarGraph& g, Index removed) {
  const std::size_t n = g.num_vertices();
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  bool cut = false;
  const Index root = removed == 0 ? 1 : 0;
  std::function<void(Index, Index)> dfs = [&](Index v, Index parent) {
    disc[v] = low[v] = timer++;
    int children = 0;
    for (Index w : g.neighbours(v)) {
      if (w == removed || w == parent) continue;
      if (disc[w] >= 0) {
        low[v] = std::min(low[v], disc[w]);
        continue;
      }
      ++children;
      dfs(w, v);
      low[v] = std::min(low[v], low[w]);
      if (parent != SIZE_MAX && low[w] >= disc[v]) cut = true;
    }
    if (parent == SIZE_MAX && children > 1) cut = true;
  };
  dfs(root, SIZE_MAX);
  for (Index v = 0; v < n; ++v)
    if (v != removed && disc[v] < 0) return false;
  return !cut;
}

}  // namespace detail

// Checks the standing assumptions: consistent orientation, Euler's formula,
// closed vertex stars and 3-connectivity.
inline ValidationReport validate(const PlanarGraph& g, bool require_simplicial = false) {
  ValidationReport report;
  report.violations = g.build_problems();
  const std::size_t n = g.num_vertices(), e = g.num_edges(), f = g.num_faces();
  if (n < 4) report.violations.push_back({"too_small", "a 3-connected planar graph needs at least 4 vertices"});
  const long euler = static_cast<long>(n) - static_cast<long>(e) + static_cast<long>(f);
  if (euler != 2)
    report.violations.push_back({"euler", "V - E + F = " + std::to_string(euler) + ", expected 2"});
  if (require_simplicial && !g.is_simplicial())
    report.violations.push_back({"non_simplicial", "some face is not a triangle"});
  for (Index v = 0; v < n; ++v) {
    if (g.degree(v) == 0) report.violations.push_back({"isolated_vertex", "vertex " + std::to_string(g.id(v)) + " lies on no face"});
  }
  if (!report.ok()) return report;

  for (Index v = 0; v < n; ++v) {
    std::size_t star = 0;
    try {
      star = g.faces_around(v).size();
    } catch (const Error&) {
      star = 0;
    }
    if (star != g.degree(v))
      report.violations.push_back({"vertex_star", "faces around vertex " + std::to_string(g.id(v)) +
                                                      " do not form a single cycle"});
  }
  if (!report.ok()) return report;

  for (Index v = 0; v < n; ++v) {
    if (!detail::biconnected_without(g, v)) {
      report.violations.push_back({"not_3_connected", "removing vertex " + std::to_string(g.id(v)) +
                                                          " leaves a graph that is not 2-connected"});
      break;
    }
  }
  return report;
}

inline void require_valid(const PlanarGraph& g, bool require_simplicial = false) {
  auto report = validate(g, require_simplicial);
  if (report.ok()) return;
  throw PreconditionError(report.violations.front().code, report.summary());
}

// Dual graph: vertex k of the dual is face k of g (its id is k), and face v of
// the dual is the counterclockwise cycle of faces around vertex v of g.
inline PlanarGraph dual(const PlanarGraph& g) {
  require_valid(g);
  std::vector<VertexId> ids(g.num_faces());
  std::iota(ids.begin(), ids.end(), VertexId{0});
  std::vector<std::vector<VertexId>> faces;
  faces.reserve(g.num_vertices());
  for (Index v = 0; v < g.num_vertices(); ++v) {
    std::vector<VertexId> cycle;
    for (FaceIndex f : g.faces_around(v)) cycle.push_back(static_cast<VertexId>(f));
    faces.push_back(std::move(cycle));
  }
  return PlanarGraph(std::move(ids), faces);
}

inline std::vector<Wheel> wheels(const PlanarGraph& g) {
  if (!g.is_simplicial()) throw PreconditionError("non_simplicial", "wheels are defined for triangulations");
  std::vector<Wheel> out;
  out.reserve(g.num_vertices());
  for (Index v = 0; v < g.num_vertices(); ++v) out.push_back({v, g.rotation(v)});
  return out;
}

// Stack a new vertex onto the triangular face (a,b,c), given as it appears in
// g. The face is replaced by (a,b,v); (b,c,v) and (c,a,v) are appended.
inline PlanarGraph stack(const PlanarGraph& g, VertexId new_vertex, std::span<const VertexId> face) {
  if (face.size() != 3) throw PreconditionError("not_a_triangle", "stacking needs a triangular face");
  auto f = g.find_face_by_ids(face);
  if (!f) throw PreconditionError("face_absent", "stacking face is not a face of the graph");
  if (g.find(new_vertex)) throw PreconditionError("duplicate_vertex", "stacked vertex id already in use");
  const auto cyc = g.face_ids(*f);
  std::vector<VertexId> ids = g.ids();
  ids.push_back(new_vertex);
  std::vector<std::vector<VertexId>> faces;
  for (FaceIndex k = 0; k < g.num_faces(); ++k) faces.push_back(g.face_ids(k));
  faces[*f] = {cyc[0], cyc[1], new_vertex};
  faces.push_back({cyc[1], cyc[2], new_vertex});
  faces.push_back({cyc[2], cyc[0], new_vertex});
  return PlanarGraph(std::move(ids), faces);
}

// The wheel as a graph of its own: the k spoke triangles plus the base face
// (clockwise from the center's point of view). With triangulate_base the base
// is fanned out from its lowest-id vertex.
inline PlanarGraph wheel_graph(const PlanarGraph& host, const Wheel& w, bool triangulate_base) {
  std::vector<VertexId> ids{host.id(w.center)};
  for (Index b : w.base) ids.push_back(host.id(b));
  std::vector<std::vector<VertexId>> faces;
  const std::size_t k = w.base.size();
  for (std::size_t i = 0; i < k; ++i) faces.push_back({ids[0], ids[1 + i], ids[1 + (i + 1) % k]});
  std::vector<VertexId> outer;
  for (std::size_t i = k; i-- > 0;) outer.push_back(ids[1 + i]);
  if (!triangulate_base || k == 3) {
    faces.push_back(outer);
  } else {
    auto lowest = std::min_element(outer.begin(), outer.end());
    std::rotate(outer.begin(), lowest, outer.end());
    for (std::size_t i = 1; i + 1 < k; ++i) faces.push_back({outer[0], outer[i], outer[i + 1]});
  }
  return PlanarGraph(std::move(ids), faces);
}

}  // namespace polydual
