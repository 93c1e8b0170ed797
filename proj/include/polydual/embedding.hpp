#pragma once

// Coordinates, edge stresses and CDV matrices attached to a PlanarGraph.
// Per-edge data is stored in a vector aligned with graph.edges().

#include <optional>
#include <vector>

#include "polydual/errors.hpp"
#include "polydual/exact.hpp"
#include "polydual/graph.hpp"

namespace polydual {

struct Embedding2D {
  PlanarGraph graph;
  std::vector<Vec2> p;
  std::optional<FaceIndex> boundary_face;

  const Vec2& at(VertexId id) const { return p.at(graph.index(id)); }
};

struct Embedding3D {
  PlanarGraph graph;
  std::vector<Vec3> u;

  const Vec3& at(VertexId id) const { return u.at(graph.index(id)); }
};

// Symmetric edge weights.
struct Stress {
  std::vector<Rational> w;

  static Stress zero(const PlanarGraph& g) { return {std::vector<Rational>(g.num_edges())}; }

  Rational get(const PlanarGraph& g, Index i, Index j) const {
    auto e = g.edge_index(i, j);
    return e ? w[*e] : Rational(0);
  }
  void set(const PlanarGraph& g, Index i, Index j, const Rational& value) {
    auto e = g.edge_index(i, j);
    if (!e) throw PreconditionError("not_an_edge", "stress on a non-edge");
    w[*e] = value;
  }

  friend bool operator==(const Stress&, const Stress&) = default;
  Stress& operator+=(const Stress& o) {
    for (std::size_t e = 0; e < w.size(); ++e) w[e] += o.w[e];
    return *this;
  }
  friend Stress operator+(Stress a, const Stress& b) { return a += b; }
  friend Stress operator*(const Rational& s, Stress a) {
    for (auto& x : a.w) x *= s;
    return a;
  }
};

// Symmetric matrix supported on the graph: a diagonal plus one value per
// edge. Entries off the edge set are zero by construction.
struct CdvMatrix {
  std::vector<Rational> diagonal;
  std::vector<Rational> off;

  static CdvMatrix zero(const PlanarGraph& g) {
    return {std::vector<Rational>(g.num_vertices()), std::vector<Rational>(g.num_edges())};
  }

  Rational get(const PlanarGraph& g, Index i, Index j) const {
    if (i == j) return diagonal.at(i);
    auto e = g.edge_index(i, j);
    return e ? off[*e] : Rational(0);
  }

  friend bool operator==(const CdvMatrix&, const CdvMatrix&) = default;
  CdvMatrix& operator+=(const CdvMatrix& o) {
    for (std::size_t i = 0; i < diagonal.size(); ++i) diagonal[i] += o.diagonal[i];
    for (std::size_t e = 0; e < off.size(); ++e) off[e] += o.off[e];
    return *this;
  }
  friend CdvMatrix operator+(CdvMatrix a, const CdvMatrix& b) { return a += b; }
  friend CdvMatrix operator*(const Rational& s, CdvMatrix a) {
    for (auto& x : a.diagonal) x *= s;
    for (auto& x : a.off) x *= s;
    return a;
  }
};

inline bool is_integer(const std::vector<Rational>& values) {
  for (const auto& x : values)
    if (!is_integer(x)) return false;
  return true;
}
inline bool is_integer(const Embedding2D& e) {
  for (const auto& p : e.p)
    if (!is_integer(p)) return false;
  return true;
}
inline bool is_integer(const Embedding3D& e) {
  for (const auto& u : e.u)
    if (!is_integer(u)) return false;
  return true;
}

// Largest absolute value, 0 for an empty list.
inline Rational max_abs(const std::vector<Rational>& values) {
  Rational m = 0;
  for (const auto& x : values) m = std::max(m, Rational(abs(x)));
  return m;
}

// max |a_i - a_j|^2 over all vertex pairs.
inline Rational spread_sq(const std::vector<Vec3>& u) {
  Rational m = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) m = std::max(m, norm_sq(u[i] - u[j]));
  return m;
}

inline Rational max_norm_sq(const std::vector<Vec3>& u) {
  Rational m = 0;
  for (const auto& x : u) m = std::max(m, norm_sq(x));
  return m;
}

inline Embedding3D lift_to_plane(const Embedding2D& e, const Rational& z = 1) {
  Embedding3D out{e.graph, {}};
  out.u.reserve(e.p.size());
  for (const auto& p : e.p) out.u.push_back({p.x, p.y, z});
  return out;
}

inline Embedding2D vertical_projection(const Embedding3D& e) {
  Embedding2D out{e.graph, {}, std::nullopt};
  out.p.reserve(e.u.size());
  for (const auto& u : e.u) out.p.push_back({u.x, u.y});
  return out;
}

}  // namespace polydual
