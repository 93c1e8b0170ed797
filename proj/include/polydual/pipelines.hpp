#pragma once

// End-to-end dual constructions: stacked polytopes from a planar drawing with
// a positive integer stress, triangulated lifts with a degree-3 apex, and
// general integer simplicial polytopes.

#include <string>
#include <vector>

#include "polydual/lovasz.hpp"

namespace polydual {

struct StackedInput {
  Embedding2D p;   // drawing of the upper graph, boundary face is a triangle
  Stress stress;   // positive off the boundary face, integer, in equilibrium
  VertexId apex;   // id of the vertex stacked onto the boundary face
};

enum class StackingMode { theorem, paper_example };

struct BoundCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct StackingResult {
  Embedding3D u;    // embedding of the stacked graph
  CdvMatrix M1;     // stress part, zero on the apex
  CdvMatrix M2;     // all-ones part on the apex tetrahedron
  Integer lambda;
  CdvMatrix M;      // M1 + lambda M2
};

struct PipelineReport {
  Embedding3D u;
  CdvMatrix M;
  std::optional<StackingResult> stacking;
  DualRealization dual;
  ConvexityReport convexity;
  BoundReport lovasz_bound;
  Rational grid;
  std::vector<BoundCheck> checks;

  bool all_passed() const {
    if (!convexity.ok() || !lovasz_bound.holds) return false;
    for (const auto& c : checks)
      if (!c.holds) return false;
    return true;
  }
};

namespace detail {

inline std::string str(const Rational& q) { return q.str(); }

// Interior faces counterclockwise and strictly convex, boundary face a
// clockwise triangle.
inline void require_convex_drawing(const Embedding2D& p) {
  const auto& g = p.graph;
  const FaceIndex b = *p.boundary_face;
  for (FaceIndex f = 0; f < g.num_faces(); ++f) {
    const auto& c = g.face(f);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Rational t = bracket3(p.p[c[k]], p.p[c[(k + 1) % c.size()]], p.p[c[(k + 2) % c.size()]]);
      if (f == b ? t >= 0 : t <= 0)
        throw PreconditionError("not_convex_drawing", "face " + std::to_string(f) + " is not a strictly convex " +
                                                          (f == b ? "clockwise boundary" : "counterclockwise face"));
    }
  }
}

inline void require_stacked_input(const StackedInput& in) {
  const auto& g = in.p.graph;
  require_valid(g);
  if (!in.p.boundary_face) throw PreconditionError("no_boundary", "drawing needs a boundary face");
  if (*in.p.boundary_face >= g.num_faces()) throw PreconditionError("no_boundary", "boundary face index out of range");
  if (g.face(*in.p.boundary_face).size() != 3) throw PreconditionError("boundary_not_triangle", "boundary face must be a triangle");
  if (!is_integer(in.p)) throw PreconditionError("non_integer", "drawing coordinates must be integers");
  if (in.stress.w.size() != g.num_edges()) throw PreconditionError("size_mismatch", "stress does not match the graph");
  if (!is_integer(in.stress.w)) throw PreconditionError("non_integer", "stress must be integral");
  require_convex_drawing(in.p);
  const auto& bf = g.face(*in.p.boundary_face);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.edges()[e];
    const bool on_boundary = std::find(bf.begin(), bf.end(), a) != bf.end() && std::find(bf.begin(), bf.end(), b) != bf.end();
    if (!on_boundary && in.stress.w[e] <= 0)
      throw PreconditionError("non_positive_stress", "interior edge " + std::to_string(g.id(a)) + "-" +
                                                         std::to_string(g.id(b)) + " has a nonpositive stress");
  }
  if (auto eq = check_equilibrium(in.p, in.stress); !eq.ok)
    throw PreconditionError("not_in_equilibrium",
                            "stress is not in equilibrium at vertex " + std::to_string(g.id(eq.residuals.front().first)));
}

}  // namespace detail

// Cone-convex integer embedding of the stacked graph with a positive integer
// CDV matrix. The drawing goes to the plane z = 1 (scaled by 3 and centered on
// the boundary triangle in theorem mode, as is in paper_example mode) and
// the apex to (0,0,-3).
inline StackingResult stacking_embed(const StackedInput& in, StackingMode mode = StackingMode::theorem) {
  detail::require_stacked_input(in);
  const auto& up = in.p.graph;
  const auto bf_ids = up.face_ids(*in.p.boundary_face);
  const Vec2 s = in.p.at(bf_ids[0]) + in.p.at(bf_ids[1]) + in.p.at(bf_ids[2]);
  if (mode == StackingMode::paper_example && !s.is_zero())
    throw PreconditionError("boundary_not_centered", "paper_example mode needs the boundary barycenter at the origin");

  StackingResult r;
  const PlanarGraph g = stack(up, in.apex, bf_ids);
  r.u.graph = g;
  r.u.u.resize(g.num_vertices());
  for (Index v = 0; v < up.num_vertices(); ++v) {
    const Vec2 q = mode == StackingMode::theorem ? Rational(3) * in.p.p[v] - s : in.p.p[v];
    r.u.u[g.index(up.id(v))] = {q.x, q.y, 1};
  }
  const Index apex = g.index(in.apex);
  r.u.u[apex] = {0, 0, -3};

  // stress part: the plain stress-to-CDV construction on the z = 1 copy
  Stress w = Stress::zero(g);
  for (std::size_t e = 0; e < up.num_edges(); ++e) {
    const auto [a, b] = up.edges()[e];
    w.set(g, g.index(up.id(a)), g.index(up.id(b)), in.stress.w[e]);
  }
  r.M1 = cdv_from_stress(r.u, w);

  std::vector<Index> tet{apex};
  for (VertexId id : bf_ids) tet.push_back(g.index(id));
  r.M2 = CdvMatrix::zero(g);
  for (Index a : tet) r.M2.diagonal[a] = 1;
  for (std::size_t x = 0; x < tet.size(); ++x)
    for (std::size_t y = x + 1; y < tet.size(); ++y) r.M2.off[*g.edge_index(tet[x], tet[y])] = 1;

  Rational worst = 0;
  for (std::size_t x = 1; x < tet.size(); ++x)
    for (std::size_t y = x + 1; y < tet.size(); ++y) worst = std::max(worst, Rational(abs(r.M1.get(g, tet[x], tet[y]))));
  r.lambda = numerator(worst) + 1;
  r.M = r.M1 + Rational(r.lambda) * r.M2;

  const auto cdv = check_cdv(r.u, r.M);
  if (!cdv.ok || !cdv.positive) throw ConsistencyError("stacking", "stacked matrix is not a positive CDV matrix");
  if (auto cc = check_cone_convex(r.u); !cc.ok()) throw ConsistencyError("stacking", "stacked embedding is not cone-convex");
  return r;
}

namespace detail {

inline std::vector<BoundCheck> stacking_checks(const StackedInput& in, const StackingResult& s, const DualRealization& d) {
  std::vector<BoundCheck> out;
  const auto& g = s.u.graph;
  const Rational max_w = max_abs(in.stress.w);
  {
    const Rational max_m = max_abs(s.M.off);
    out.push_back({"stacking_entry_bound", max_m <= max_w + 1,
                   "max|M_ij| = " + str(max_m) + " <= max|w| + 1 = " + str(max_w + 1)});
  }
  {
    // |phi_f| <= 2n (max|w| + 1) max|u_i|^2, relative to the anchor
    Rational max_phi_sq = 0;
    for (const auto& x : d.phi) max_phi_sq = std::max(max_phi_sq, norm_sq(x - d.phi[d.anchor_face]));
    const Rational u2 = max_norm_sq(s.u.u);
    const Rational rhs = 2 * static_cast<long>(g.num_vertices()) * (max_w + 1) * u2;
    out.push_back({"stacked_phi_bound", max_phi_sq <= rhs * rhs,
                   "max|phi|^2 = " + str(max_phi_sq) + " <= (2n(max|w|+1)max|u|^2)^2 = " + str(rhs * rhs)});
  }
  return out;
}

inline void finish(PipelineReport& r) {
  r.convexity = verify_dual_polytope(r.u, r.dual, &r.M);
  r.lovasz_bound = bound_report(r.u, r.M, r.dual);
  r.grid = grid_size(r.dual.phi);
  r.checks.push_back({"dual_convex", r.convexity.ok(), std::to_string(r.convexity.faces_checked) + " dual faces"});
  r.checks.push_back({"phi_bound", r.lovasz_bound.holds,
                      "max|phi|^2 = " + str(r.lovasz_bound.max_phi_sq) + " < (2n)^2 max|M_ij u_i x u_j|^2 = " +
                          str(Rational(4 * static_cast<long>(r.lovasz_bound.n * r.lovasz_bound.n)) *
                              r.lovasz_bound.max_term_sq)});
  r.checks.push_back({"path_length", r.lovasz_bound.path_below_2n,
                      "longest anchor path " + std::to_string(r.lovasz_bound.path_length) + " < 2n = " +
                          std::to_string(2 * r.lovasz_bound.n)});
  if (!r.convexity.ok())
    throw ConsistencyError("dual_not_convex", r.convexity.violations.front().message);
}

}  // namespace detail

struct Anchor {
  std::vector<VertexId> face;  // face cycle of the primal graph
  Vec3 phi;
};

inline FaceIndex resolve_anchor(const PlanarGraph& g, const std::optional<Anchor>& anchor) {
  if (!anchor) return 0;
  auto f = g.find_face_by_ids(anchor->face);
  if (!f) throw PreconditionError("bad_anchor", "anchor face is not a face of the stacked graph");
  return *f;
}

inline PipelineReport stacked_dual(const StackedInput& in, StackingMode mode = StackingMode::theorem,
                                   const std::optional<Anchor>& anchor = std::nullopt) {
  PipelineReport r;
  r.stacking = stacking_embed(in, mode);
  r.u = r.stacking->u;
  r.M = r.stacking->M;
  const FaceIndex f0 = resolve_anchor(r.u.graph, anchor);
  r.dual = build_phi(r.u, r.M, f0, anchor ? anchor->phi : Vec3{});
  r.checks = detail::stacking_checks(in, *r.stacking, r.dual);
  detail::finish(r);
  return r;
}

struct Degree3Report {
  ReverseLiftResult lift;
  PipelineReport pipeline;
};

// Convex integer polytope whose top faces project onto a planar drawing with
// the given (bottom) boundary face: reverse lifting to an integer stress,
// then the stacked construction with a new apex.
inline Degree3Report degree3_dual(const Embedding3D& u, FaceIndex boundary_face, std::optional<VertexId> apex = std::nullopt,
                                  const std::optional<Anchor>& anchor = std::nullopt) {
  require_valid(u.graph, true);
  if (boundary_face >= u.graph.num_faces()) throw PreconditionError("no_boundary", "boundary face index out of range");
  if (!is_strictly_convex(u)) throw PreconditionError("not_convex", "input is not a strictly convex polytope");
  Degree3Report out;
  out.lift = reverse_maxwell_cremona(u);
  StackedInput in{out.lift.p, out.lift.stress, 0};
  in.p.boundary_face = boundary_face;
  if (apex) {
    in.apex = *apex;
  } else {
    in.apex = *std::max_element(u.graph.ids().begin(), u.graph.ids().end()) + 1;
  }
  out.pipeline = stacked_dual(in, StackingMode::theorem, anchor);
  out.pipeline.checks.push_back({"reverse_lift_bound", out.lift.bound_L,
                                 "max|w| = " + detail::str(out.lift.max_stress) + " < 8 L^(2D+5), D = " +
                                     std::to_string(out.lift.max_degree)});
  return out;
}

struct NormalizedEmbedding {
  Embedding3D u;
  Integer scale = 1;    // coordinate growth factor
  Vec3 translation;     // subtracted before scaling
  bool changed = false;
};

// Moves the origin into the interior: translate by minus the vertex centroid
// and scale by the common denominator of the centroid. No-op if the origin is
// already strictly inside.
inline NormalizedEmbedding normalize_origin(const Embedding3D& u) {
  if (!is_strictly_convex(u)) throw PreconditionError("not_convex", "input is not a full-dimensional convex polytope");
  NormalizedEmbedding out{u, 1, {}, false};
  if (origin_interior(u)) return out;
  Vec3 c;
  for (const auto& x : u.u) c += x;
  c = c / Rational(static_cast<long>(u.u.size()));
  Integer d = 1;
  for (int k = 0; k < 3; ++k) d = lcm(d, denominator(c[k]));
  out.scale = d;
  out.translation = c;
  out.changed = true;
  for (auto& x : out.u.u) x = Rational(d) * (x - c);
  if (!origin_interior(out.u)) throw ConsistencyError("normalize", "centroid is not interior");
  return out;
}

struct SimplicialReport {
  NormalizedEmbedding normalized;
  IntegralCdvResult cdv;
  PipelineReport pipeline;
};

inline SimplicialReport simplicial_dual(const Embedding3D& input, const std::optional<Anchor>& anchor = std::nullopt) {
  require_valid(input.graph, true);
  if (!is_integer(input)) throw PreconditionError("non_integer", "coordinates must be integers");
  SimplicialReport out;
  out.normalized = normalize_origin(input);
  const Embedding3D& u = out.normalized.u;
  out.cdv = integral_positive_cdv(u);
  auto& r = out.pipeline;
  r.u = u;
  r.M = out.cdv.M;
  const FaceIndex f0 = resolve_anchor(u.graph, anchor);
  r.dual = build_phi(u, r.M, f0, anchor ? anchor->phi : Vec3{});
  r.checks.push_back({"cdv_bound", out.cdv.bound_L,
                      "max|M_ij| = " + detail::str(out.cdv.max_entry) + " <= 16 L^(3D+7) + 4 L^(3D-3), D = " +
                          std::to_string(out.cdv.max_degree)});
  detail::finish(r);
  return out;
}

}  // namespace polydual
