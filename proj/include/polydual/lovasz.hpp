#pragma once

// Face vectors of the dual polytope from a cone-convex embedding and a
// positive CDV matrix:
//   phi_f - phi_g = M_ij (u_i x u_j),  f left of i->j, g right of it.

#include <algorithm>
#include <array>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "polydual/cdv3d.hpp"

namespace polydual {

struct DualRealization {
  std::vector<Vec3> phi;  // per face of the primal graph
  FaceIndex anchor_face = 0;
  Vec3 anchor_phi;
  std::size_t tree_depth = 0;  // longest path from the anchor in the dual BFS tree
};

// Dual graph with phi attached: vertex f of the result sits at phi_f.
inline Embedding3D dual_embedding(const PlanarGraph& primal, const DualRealization& d) {
  return {dual(primal), d.phi};
}

inline DualRealization build_phi(const Embedding3D& u, const CdvMatrix& M, FaceIndex anchor_face, const Vec3& anchor_phi) {
  const auto& g = u.graph;
  require_valid(g);
  if (anchor_face >= g.num_faces()) throw PreconditionError("bad_anchor", "anchor face index out of range");
  const auto cdv = check_cdv(u, M);
  if (!cdv.ok)
    throw PreconditionError("not_cdv", "matrix is not a CDV matrix (residual at vertex " +
                                           std::to_string(g.id(cdv.residuals.front().first)) + ")");
  if (!cdv.positive) throw PreconditionError("not_positive", "matrix has a nonpositive edge entry");
  if (auto cc = check_cone_convex(u); !cc.ok()) throw PreconditionError("not_cone_convex", cc.summary());

  DualRealization d;
  d.anchor_face = anchor_face;
  d.anchor_phi = anchor_phi;
  std::vector<std::optional<Vec3>> phi(g.num_faces());
  std::vector<std::size_t> depth(g.num_faces(), 0);
  phi[anchor_face] = anchor_phi;
  std::deque<FaceIndex> queue{anchor_face};
  while (!queue.empty()) {
    const FaceIndex f = queue.front();
    queue.pop_front();
    // (neighbour, value it must take) for every edge of f
    std::vector<std::pair<FaceIndex, Vec3>> next;
    const auto& c = g.face(f);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Index i = c[k], j = c[(k + 1) % c.size()];
      const FaceIndex nb = *g.left_face(j, i);
      next.emplace_back(nb, *phi[f] - M.get(g, i, j) * cross(u.u[i], u.u[j]));
    }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [nb, value] : next) {
      if (!phi[nb]) {
        phi[nb] = value;
        depth[nb] = depth[f] + 1;
        d.tree_depth = std::max(d.tree_depth, depth[nb]);
        queue.push_back(nb);
      } else if (!(*phi[nb] == value)) {
        throw ConsistencyError("phi_inconsistent", "face vectors disagree around a dual cycle");
      }
    }
  }
  for (auto& x : phi) d.phi.push_back(*x);
  return d;
}

struct ConvexityReport {
  std::vector<Violation> violations;
  std::size_t faces_checked = 0;
  bool ok() const { return violations.empty(); }
};

// Exact certificate that conv(phi) is a convex polytope whose faces are the
// phi-cycles around the primal vertices:
//  - <phi_f, u_i> is the same for all faces f at vertex i;
//  - each such cycle is a strictly convex planar polygon, counterclockwise
//    seen from outside;
//  - every other phi lies strictly inside the plane of that polygon;
//  - all phi are distinct.
// If M is given, the defining edge relation is checked too.
inline ConvexityReport verify_dual_polytope(const Embedding3D& u, const DualRealization& d,
                                            const CdvMatrix* M = nullptr) {
  const auto& g = u.graph;
  ConvexityReport r;
  auto fail = [&](std::string code, std::string msg) { r.violations.push_back({std::move(code), std::move(msg)}); };
  if (d.phi.size() != g.num_faces()) {
    fail("size_mismatch", "one face vector per face expected");
    return r;
  }
  if (auto v = validate(g); !v.ok()) {
    r.violations = v.violations;
    return r;
  }
  {
    std::set<std::array<std::string, 3>> seen;
    for (const auto& x : d.phi)
      if (!seen.insert({x.x.str(), x.y.str(), x.z.str()}).second) fail("distinct", "two faces share a vector");
  }
  if (M) {
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      const auto [i, j] = g.edges()[e];
      const auto ctx = g.context(i, j);
      if (d.phi[ctx.left] - d.phi[ctx.right] != M->off[e] * cross(u.u[i], u.u[j]))
        fail("edge_relation", "edge " + std::to_string(g.id(i)) + "-" + std::to_string(g.id(j)) +
                                  " violates phi_f - phi_g = M_ij (u_i x u_j)");
    }
  }
  for (Index v = 0; v < g.num_vertices(); ++v) {
    const auto around = g.faces_around(v);
    const std::string tag = "vertex " + std::to_string(g.id(v));
    ++r.faces_checked;
    const Rational level = dot(d.phi[around[0]], u.u[v]);
    for (FaceIndex f : around)
      if (dot(d.phi[f], u.u[v]) != level) {
        fail("coplanar", tag + ": <phi_f, u_i> not constant");
        break;
      }
    std::vector<Vec3> poly;
    for (FaceIndex f : around) poly.push_back(d.phi[f]);
    const std::size_t k = poly.size();
    Vec3 normal;
    for (std::size_t s = 0; s < k && normal.is_zero(); ++s)
      normal = cross(poly[(s + 1) % k] - poly[s], poly[(s + 2) % k] - poly[s]);
    if (normal.is_zero()) {
      fail("degenerate_face", tag + ": dual face is degenerate");
      continue;
    }
    bool planar = true;
    for (const auto& x : poly)
      if (dot(normal, x - poly[0]) != 0) planar = false;
    if (!planar) {
      fail("planar", tag + ": dual face is not planar");
      continue;
    }
    bool convex = true;
    for (std::size_t s = 0; s < k && convex; ++s) {
      const Vec3 edge = poly[(s + 1) % k] - poly[s];
      for (std::size_t t = 0; t < k; ++t) {
        if (t == s || t == (s + 1) % k) continue;
        if (dot(cross(edge, poly[t] - poly[s]), normal) <= 0) {
          convex = false;
          break;
        }
      }
    }
    if (!convex) fail("convex_face", tag + ": dual face is not a strictly convex polygon");
    std::vector<bool> on(g.num_faces(), false);
    for (FaceIndex f : around) on[f] = true;
    for (FaceIndex f = 0; f < g.num_faces(); ++f) {
      if (on[f]) continue;
      // inside means opposite to the outward normal
      if (dot(normal, d.phi[f] - poly[0]) >= 0) {
        fail("supporting_plane", tag + ": face " + std::to_string(f) + " is not strictly inside the dual face plane");
        break;
      }
    }
  }
  return r;
}

// Coordinate bound for face vectors taken relative to the anchor:
//   |phi_f - phi_anchor| < 2n max |M_ij (u_i x u_j)|
struct BoundReport {
  Rational max_phi_sq;       // max |phi_f - phi_anchor|^2
  Rational max_term_sq;      // max |M_ij (u_i x u_j)|^2
  std::size_t n = 0;
  std::size_t path_length = 0;  // longest tree path from the anchor
  bool path_below_2n = false;
  bool holds = false;
};

inline BoundReport bound_report(const Embedding3D& u, const CdvMatrix& M, const DualRealization& d) {
  const auto& g = u.graph;
  BoundReport b;
  b.n = g.num_vertices();
  b.path_length = d.tree_depth;
  b.path_below_2n = b.path_length < 2 * b.n;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [i, j] = g.edges()[e];
    b.max_term_sq = std::max(b.max_term_sq, norm_sq(M.off[e] * cross(u.u[i], u.u[j])));
  }
  const Vec3 base = d.phi.at(d.anchor_face);
  for (const auto& x : d.phi) b.max_phi_sq = std::max(b.max_phi_sq, norm_sq(x - base));
  const Rational two_n = 2 * static_cast<long>(b.n);
  b.holds = b.max_phi_sq < two_n * two_n * b.max_term_sq;
  return b;
}

// Largest coordinate range over the three axes.
inline Rational grid_size(const std::vector<Vec3>& pts) {
  Rational best = 0;
  for (int k = 0; k < 3; ++k) {
    Rational lo = pts.at(0)[k], hi = pts.at(0)[k];
    for (const auto& x : pts) {
      lo = std::min(lo, x[k]);
      hi = std::max(hi, x[k]);
    }
    best = std::max(best, hi - lo);
  }
  return best;
}

}  // namespace polydual
