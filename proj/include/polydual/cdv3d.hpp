#pragma once

// CDV matrices of 3d embeddings: verification, conversions to and from
// equilibrium stresses, projective rescaling, canonical matrices of
// polytopes, atomic wheel matrices, wheel decomposition and the integral
// positive construction for simplicial polytopes.

#include <array>
#include <string>
#include <vector>

#include "polydual/stress2d.hpp"

namespace polydual {

struct CdvReport {
  bool ok = true;
  bool positive = true;                          // every edge entry > 0
  std::vector<std::pair<Index, Vec3>> residuals; // sum_j M_ij u_j, nonzero only
};

// Symmetry and support hold by construction of CdvMatrix; this checks
// sum_j M_ij u_j = 0 (the sum includes the diagonal).
inline CdvReport check_cdv(const Embedding3D& u, const CdvMatrix& M) {
  const auto& g = u.graph;
  CdvReport r;
  if (M.diagonal.size() != g.num_vertices() || M.off.size() != g.num_edges())
    throw PreconditionError("size_mismatch", "matrix does not match the graph");
  std::vector<Vec3> s(g.num_vertices());
  for (Index v = 0; v < g.num_vertices(); ++v) s[v] = M.diagonal[v] * u.u[v];
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.edges()[e];
    s[a] += M.off[e] * u.u[b];
    s[b] += M.off[e] * u.u[a];
    if (M.off[e] <= 0) r.positive = false;
  }
  for (Index v = 0; v < s.size(); ++v)
    if (!s[v].is_zero()) r.residuals.emplace_back(v, s[v]);
  r.ok = r.residuals.empty();
  return r;
}

// Extends edge values to the unique CDV matrix: M_ii is fixed by
// sum_{j != i} M_ij u_j = -M_ii u_i.
inline CdvMatrix complete_diagonal(const Embedding3D& u, std::vector<Rational> off) {
  const auto& g = u.graph;
  CdvMatrix M{std::vector<Rational>(g.num_vertices()), std::move(off)};
  std::vector<Vec3> s(g.num_vertices());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.edges()[e];
    s[a] += M.off[e] * u.u[b];
    s[b] += M.off[e] * u.u[a];
  }
  for (Index v = 0; v < s.size(); ++v) {
    if (s[v].is_zero()) continue;
    auto t = parallel_factor(s[v], u.u[v]);
    if (!t)
      throw PreconditionError("no_cdv_extension", "edge values at vertex " + std::to_string(g.id(v)) +
                                                      " admit no diagonal entry");
    M.diagonal[v] = -*t;
  }
  return M;
}

enum class StressMode { plain, coned };

// Equilibrium stress to CDV matrix. In plain mode w must be in equilibrium on
// u and M_ii = -sum_k w_ik. In coned mode w lives on the graph coned from an
// apex at the origin; apex[i] is the weight of the edge from vertex i to the
// apex and M_ii also subtracts it.
inline CdvMatrix cdv_from_stress(const Embedding3D& u, const Stress& w, StressMode mode = StressMode::plain,
                                 const std::vector<Rational>& apex = {}) {
  const auto& g = u.graph;
  std::vector<Vec3> r(g.num_vertices());
  CdvMatrix M{std::vector<Rational>(g.num_vertices()), w.w};
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.edges()[e];
    M.diagonal[a] -= w.w[e];
    M.diagonal[b] -= w.w[e];
    r[a] += w.w[e] * (u.u[b] - u.u[a]);
    r[b] += w.w[e] * (u.u[a] - u.u[b]);
  }
  if (mode == StressMode::coned) {
    if (apex.size() != g.num_vertices()) throw PreconditionError("size_mismatch", "one apex weight per vertex");
    for (Index v = 0; v < g.num_vertices(); ++v) {
      M.diagonal[v] -= apex[v];
      r[v] -= apex[v] * u.u[v];
    }
  }
  for (Index v = 0; v < r.size(); ++v)
    if (!r[v].is_zero())
      throw PreconditionError("not_in_equilibrium", "stress is not in equilibrium at vertex " + std::to_string(g.id(v)));
  return M;
}

// Normal n and offset c with <n,x> = c for all points, if they are coplanar
// and not all collinear.
inline std::optional<std::pair<Vec3, Rational>> common_plane(const std::vector<Vec3>& pts) {
  for (std::size_t b = 1; b < pts.size(); ++b) {
    for (std::size_t c = b + 1; c < pts.size(); ++c) {
      const Vec3 n = cross(pts[b] - pts[0], pts[c] - pts[0]);
      if (n.is_zero()) continue;
      const Rational off = dot(n, pts[0]);
      for (const auto& x : pts)
        if (dot(n, x) != off) return std::nullopt;
      return std::make_pair(n, off);
    }
  }
  return std::nullopt;
}

// Edge restriction of a CDV matrix of a flat embedding (plane off the origin).
inline Stress stress_from_flat_cdv(const Embedding3D& u, const CdvMatrix& M) {
  auto plane = common_plane(u.u);
  if (!plane) throw PreconditionError("not_flat", "embedding does not lie in a plane");
  if (plane->second == 0) throw PreconditionError("plane_through_origin", "plane of the embedding contains the origin");
  if (!check_cdv(u, M).ok) throw PreconditionError("not_cdv", "matrix is not a CDV matrix for the embedding");
  Stress w{M.off};
  if (!check_equilibrium(u, w).ok) throw ConsistencyError("not_in_equilibrium", "edge restriction is not in equilibrium");
  return w;
}

// Scale factors l_i with r_i = l_i u_i.
inline std::vector<Rational> scale_factors(const Embedding3D& u, const Embedding3D& r) {
  if (u.u.size() != r.u.size()) throw PreconditionError("size_mismatch", "embeddings differ in size");
  std::vector<Rational> l(u.u.size());
  for (Index v = 0; v < u.u.size(); ++v) {
    auto t = parallel_factor(r.u[v], u.u[v]);
    if (!t || *t == 0)
      throw PreconditionError("not_rescaling", "vertex " + std::to_string(u.graph.id(v)) + " is not a nonzero multiple");
    l[v] = *t;
  }
  return l;
}

// CDV matrix for r_i = l_i u_i: entries M_ij / (l_i l_j).
inline CdvMatrix rescale_cdv(const Embedding3D& u, const Embedding3D& r, const CdvMatrix& M) {
  const auto l = scale_factors(u, r);
  CdvMatrix out = M;
  for (Index v = 0; v < l.size(); ++v) out.diagonal[v] /= l[v] * l[v];
  for (std::size_t e = 0; e < out.off.size(); ++e) {
    const auto [a, b] = u.graph.edges()[e];
    out.off[e] /= l[a] * l[b];
  }
  return out;
}

// Central projection onto the plane {x : <normal, x> = 1}.
struct CentralProjection {
  Vec3 normal;
  std::vector<Rational> lambda;  // p_i = lambda_i u_i
  Embedding3D p;                 // projected points, on the plane
  int dropped_axis = 2;          // chart: the plane seen from the other two axes
};

inline CentralProjection central_projection(const Embedding3D& u, const Vec3& normal) {
  const int axis = nonzero_component(normal);
  if (axis < 0) throw PreconditionError("bad_plane", "plane normal is zero");
  CentralProjection cp{normal, {}, {u.graph, {}}, 2};
  cp.dropped_axis = normal.z != 0 ? 2 : (normal.y != 0 ? 1 : 0);
  for (Index v = 0; v < u.u.size(); ++v) {
    const Rational d = dot(normal, u.u[v]);
    if (d == 0)
      throw PreconditionError("parallel_to_plane", "vertex " + std::to_string(u.graph.id(v)) + " is parallel to the plane");
    cp.lambda.push_back(1 / d);
    cp.p.u.push_back(cp.lambda.back() * u.u[v]);
  }
  return cp;
}

// 2d chart of points on the projection plane, dropping one coordinate axis.
inline Embedding2D chart(const CentralProjection& cp) {
  Embedding2D out{cp.p.graph, {}, std::nullopt};
  for (const auto& x : cp.p.u) {
    switch (cp.dropped_axis) {
      case 0: out.p.push_back({x.y, x.z}); break;
      case 1: out.p.push_back({x.z, x.x}); break;
      default: out.p.push_back({x.x, x.y}); break;
    }
  }
  return out;
}

struct ProjectedCdv {
  CentralProjection projection;
  Stress stress;
};

// Forward correspondence: w_ij = M_ij / (lambda_i lambda_j).
inline ProjectedCdv project_cdv(const Embedding3D& u, const Vec3& normal, const CdvMatrix& M) {
  ProjectedCdv out{central_projection(u, normal), Stress::zero(u.graph)};
  const auto& l = out.projection.lambda;
  for (std::size_t e = 0; e < M.off.size(); ++e) {
    const auto [a, b] = u.graph.edges()[e];
    out.stress.w[e] = M.off[e] / (l[a] * l[b]);
  }
  return out;
}

// Reverse correspondence: M_ij = lambda_i lambda_j w_ij, diagonal completed.
inline CdvMatrix unproject_stress(const Embedding3D& u, const Vec3& normal, const Stress& w) {
  const auto cp = central_projection(u, normal);
  if (!check_equilibrium(cp.p, w).ok)
    throw PreconditionError("not_in_equilibrium", "stress is not in equilibrium on the projection");
  std::vector<Rational> off(w.w.size());
  for (std::size_t e = 0; e < off.size(); ++e) {
    const auto [a, b] = u.graph.edges()[e];
    off[e] = cp.lambda[a] * cp.lambda[b] * w.w[e];
  }
  return complete_diagonal(u, std::move(off));
}

// phi with <phi, x> = 1 on the plane through a, b, c.
inline Vec3 polar_vector(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Rational d = det3(a, b, c);
  if (d == 0) throw PreconditionError("face_through_origin", "a face plane passes through the origin");
  return (cross(b, c) + cross(c, a) + cross(a, b)) / d;
}

struct CanonicalCdv {
  CdvMatrix M;
  std::vector<Vec3> phi;  // per face, <phi_f, x> = 1 on face f
};

inline CanonicalCdv canonical_cdv(const Embedding3D& u) {
  const auto& g = u.graph;
  require_valid(g);
  CanonicalCdv out;
  for (FaceIndex f = 0; f < g.num_faces(); ++f) {
    const auto& c = g.face(f);
    const Vec3 phi = polar_vector(u.u[c[0]], u.u[c[1]], u.u[c[2]]);
    for (Index v : c)
      if (dot(phi, u.u[v]) != 1) throw PreconditionError("non_planar_face", "face " + std::to_string(f) + " is not planar");
    out.phi.push_back(phi);
  }
  std::vector<Rational> off(g.num_edges());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [i, j] = g.edges()[e];
    const auto ctx = g.context(i, j);
    const Vec3 x = cross(u.u[i], u.u[j]);
    if (x.is_zero()) throw PreconditionError("parallel_vertices", "an edge is collinear with the origin");
    auto m = parallel_factor(out.phi[ctx.left] - out.phi[ctx.right], x);
    if (!m) throw ConsistencyError("canonical_cdv", "face vector difference is not along u_i x u_j");
    off[e] = *m;
  }
  out.M = complete_diagonal(u, std::move(off));
  return out;
}

inline Rational wheel_det_product(const Wheel& w, const std::vector<Vec3>& u) {
  Rational prod = 1;
  const std::size_t k = w.base.size();
  for (std::size_t j = 0; j < k; ++j) prod *= det3(u[w.base[j]], u[w.base[(j + 1) % k]], u[w.center]);
  return prod;
}

inline CdvMatrix atomic_cdv_small(const Embedding3D& u, const Wheel& w) {
  const auto& g = u.graph;
  std::vector<Rational> off(g.num_edges());
  const std::size_t k = w.base.size();
  const Vec3& uc = u.u[w.center];
  auto put = [&](Index a, Index b, const Rational& value) {
    auto e = g.edge_index(a, b);
    if (!e) throw PreconditionError("not_an_edge", "wheel edge missing from the graph");
    off[*e] = value;
  };
  for (std::size_t i = 0; i < k; ++i) {
    const Vec3& prev = u.u[w.base[(i + k - 1) % k]];
    const Vec3& cur = u.u[w.base[i]];
    const Vec3& next = u.u[w.base[(i + 1) % k]];
    const Rational d_prev = det3(prev, cur, uc);
    const Rational d_next = det3(cur, next, uc);
    if (d_prev == 0 || d_next == 0)
      throw PreconditionError("coplanar_wheel", "a spoke triangle is coplanar with the origin");
    put(w.base[i], w.base[(i + 1) % k], Rational(-1) / d_next);
    put(w.base[i], w.center, det3(prev, cur, next) / (d_prev * d_next));
  }
  return complete_diagonal(u, std::move(off));
}

inline CdvMatrix atomic_cdv_large(const Embedding3D& u, const Wheel& w) {
  return wheel_det_product(w, u.u) * atomic_cdv_small(u, w);
}

// First integer v, by increasing max-norm, with <v, u_i> != 0 for all i.
// Within one max-norm: fewer nonzero entries first, then fewer negative
// entries, then lexicographic.
inline Vec3 choose_projection_normal(const std::vector<Vec3>& u) {
  for (int r = 1;; ++r) {
    std::vector<std::array<int, 3>> shell;
    for (int x = -r; x <= r; ++x)
      for (int y = -r; y <= r; ++y)
        for (int z = -r; z <= r; ++z)
          if (std::max({std::abs(x), std::abs(y), std::abs(z)}) == r) shell.push_back({x, y, z});
    auto rank = [](const std::array<int, 3>& a) {
      int nnz = 0, neg = 0;
      for (int c : a) {
        nnz += c != 0;
        neg += c < 0;
      }
      return std::make_tuple(nnz, neg, a[0], a[1], a[2]);
    };
    std::sort(shell.begin(), shell.end(), [&](const auto& a, const auto& b) { return rank(a) < rank(b); });
    for (const auto& c : shell) {
      const Vec3 v{c[0], c[1], c[2]};
      bool good = true;
      for (const auto& x : u)
        if (dot(v, x) == 0) { good = false; break; }
      if (good) return v;
    }
  }
}

struct CdvDecomposition {
  std::vector<Rational> beta;  // M = sum_k beta_k * small_atomic_cdv(W_k)
  Vec3 normal;                 // projection plane used
};

// Decomposes M into small atomic CDV matrices by central projection to a
// plane, lifting the projected stress and pulling the heights back.
inline CdvDecomposition wheel_decompose_cdv(const Embedding3D& u, const CdvMatrix& M) {
  const auto& g = u.graph;
  require_valid(g, true);
  if (!check_cdv(u, M).ok) throw PreconditionError("not_cdv", "matrix is not a CDV matrix for the embedding");
  for (FaceIndex f = 0; f < g.num_faces(); ++f) {
    const auto& c = g.face(f);
    if (det3(u.u[c[0]], u.u[c[1]], u.u[c[2]]) == 0)
      throw PreconditionError("face_through_origin", "face " + std::to_string(f) + " spans a plane through the origin");
  }
  CdvDecomposition out;
  out.normal = choose_projection_normal(u.u);
  const auto proj = project_cdv(u, out.normal, M);
  const auto p2 = chart(proj.projection);
  const auto lift = maxwell_cremona_lift(p2, proj.stress, 0);
  const auto ws = wheels(g);
  const auto& lam = proj.projection.lambda;
  out.beta.resize(ws.size());
  CdvMatrix sum = CdvMatrix::zero(g);
  for (Index k = 0; k < ws.size(); ++k) {
    if (lift.z[k] == 0) continue;
    const CdvMatrix atom = atomic_cdv_small(u, ws[k]);
    const Stress s = atomic_stress_small(p2, ws[k]);
    // pull the chart atomic stress back; it is a multiple of atom
    const Index b0 = ws[k].base[0], b1 = ws[k].base[1];
    const Rational ratio = lam[b0] * lam[b1] * s.get(g, b0, b1) / atom.get(g, b0, b1);
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      const auto [a, b] = g.edges()[e];
      if (lam[a] * lam[b] * s.w[e] != ratio * atom.off[e])
        throw ConsistencyError("decomposition", "projected atomic stress is not a multiple of the atomic matrix");
    }
    out.beta[k] = lift.z[k] * ratio;
    sum += out.beta[k] * atom;
  }
  if (!(sum == M)) throw ConsistencyError("decomposition", "wheel decomposition does not re-sum to the matrix");
  return out;
}

// Strict convexity: every vertex off a face lies strictly inside its plane.
inline bool is_strictly_convex(const Embedding3D& u) {
  const auto& g = u.graph;
  for (FaceIndex f = 0; f < g.num_faces(); ++f) {
    const auto& c = g.face(f);
    const Vec3 &a = u.u[c[0]], &b = u.u[c[1]], &d = u.u[c[2]];
    for (Index v = 0; v < g.num_vertices(); ++v) {
      const Rational s = bracket4(a, b, d, u.u[v]);
      const bool on_face = std::find(c.begin(), c.end(), v) != c.end();
      if (on_face ? s != 0 : s <= 0) return false;
    }
  }
  return true;
}

inline bool origin_interior(const Embedding3D& u) {
  const Vec3 o{};
  for (FaceIndex f = 0; f < u.graph.num_faces(); ++f) {
    const auto& c = u.graph.face(f);
    if (bracket4(u.u[c[0]], u.u[c[1]], u.u[c[2]], o) <= 0) return false;
  }
  return true;
}

// Local cone-convexity: around every directed edge i->j the vertex after j on
// the left face is counterclockwise and the vertex after i on the right face
// clockwise (as seen from the origin), and consecutive face triples all turn
// counterclockwise.
inline ValidationReport check_cone_convex(const Embedding3D& u) {
  const auto& g = u.graph;
  ValidationReport r;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    for (int dir = 0; dir < 2; ++dir) {
      const Index i = dir ? g.edges()[e].b : g.edges()[e].a;
      const Index j = dir ? g.edges()[e].a : g.edges()[e].b;
      const auto ctx = g.context(i, j);
      const Index k = g.next_on_face(ctx.left, j);
      const Index l = g.next_on_face(ctx.right, i);
      if (!(det3(u.u[i], u.u[j], u.u[k]) > 0 && det3(u.u[i], u.u[j], u.u[l]) < 0)) {
        r.violations.push_back({"cone_convex", "edge " + std::to_string(g.id(i)) + "-" + std::to_string(g.id(j)) +
                                                   " has its faces on the wrong sides"});
      }
    }
  }
  for (FaceIndex f = 0; f < g.num_faces(); ++f) {
    const auto& c = g.face(f);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (det3(u.u[c[k]], u.u[c[(k + 1) % c.size()]], u.u[c[(k + 2) % c.size()]]) <= 0) {
        r.violations.push_back({"cone_convex", "face " + std::to_string(f) + " is not convex around the origin"});
        break;
      }
  }
  return r;
}

struct IntegralCdvResult {
  CdvMatrix M;                 // integer off the diagonal, positive
  CdvMatrix canonical;
  std::vector<Rational> alpha; // coefficients against the large atomic matrices
  Integer C;
  Rational max_atomic;
  Rational min_canonical;
  std::size_t max_degree = 0;
  Rational L_sq;
  Rational max_u_sq;
  Rational max_entry;
  bool diagonal_integer = false;
  bool bound_L = false;        // |M| <= 16 L^(3D+7) + 4 L^(3D-3)
  bool bound_theorem = false;  // same with L replaced by 2 max|u|
};

namespace detail {

// x <= 16 r^(3D+7) + 4 r^(3D-3) with r = sqrt(r_sq), exactly.
inline bool cdv_bound_holds(const Rational& x, const Rational& r_sq, std::size_t max_degree) {
  const long hi = 3 * static_cast<long>(max_degree) + 7;
  const long lo = 3 * static_cast<long>(max_degree) - 3;
  auto pw = [&](long half) {
    Rational out = 1;
    for (long k = 0; k < half; ++k) out *= r_sq;
    return out;
  };
  if (hi % 2 == 0) return x <= 16 * pw(hi / 2) + 4 * pw(lo / 2);
  // both exponents odd: factor out one r and square
  const Rational k = 16 * pw(hi / 2) + 4 * pw(lo / 2);
  return x * x <= r_sq * k * k;
}

}  // namespace detail

// Integer positive CDV matrix of an integer convex simplicial polytope with
// the origin in its interior, sign-matching the canonical matrix.
inline IntegralCdvResult integral_positive_cdv(const Embedding3D& u) {
  const auto& g = u.graph;
  require_valid(g, true);
  if (!is_integer(u)) throw PreconditionError("non_integer", "coordinates must be integers");
  if (!is_strictly_convex(u)) throw PreconditionError("not_convex", "embedding is not a strictly convex polytope");
  if (!origin_interior(u)) throw PreconditionError("origin_not_interior", "origin is not strictly inside the polytope");

  IntegralCdvResult r;
  r.canonical = canonical_cdv(u).M;
  const auto dec = wheel_decompose_cdv(u, r.canonical);
  const auto ws = wheels(g);
  std::vector<CdvMatrix> large;
  r.max_atomic = 0;
  r.alpha.resize(ws.size());
  for (Index k = 0; k < ws.size(); ++k) {
    const Rational prod = wheel_det_product(ws[k], u.u);
    large.push_back(prod * atomic_cdv_small(u, ws[k]));
    r.max_atomic = std::max(r.max_atomic, max_abs(large.back().off));
    r.alpha[k] = dec.beta[k] / prod;
  }
  r.min_canonical = abs(r.canonical.off.front());
  for (const auto& x : r.canonical.off) r.min_canonical = std::min(r.min_canonical, Rational(abs(x)));
  if (r.min_canonical == 0) throw PreconditionError("coplanar_faces", "canonical matrix vanishes on an edge");
  r.C = 4 * ceil(r.max_atomic / r.min_canonical);

  r.M = CdvMatrix::zero(g);
  for (Index k = 0; k < ws.size(); ++k) {
    const Integer coef = floor(Rational(r.C) * r.alpha[k]);
    if (coef != 0) r.M += Rational(coef) * large[k];
  }
  if (!is_integer(r.M.off)) throw ConsistencyError("non_integer_cdv", "rounded matrix is not integral");
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (sign(r.M.off[e]) != sign(r.canonical.off[e]))
      throw ConsistencyError("sign_mismatch", "rounded matrix changed a sign");
  if (!check_cdv(u, r.M).ok) throw ConsistencyError("not_cdv", "rounded matrix is not a CDV matrix");
  r.diagonal_integer = is_integer(r.M.diagonal);

  r.max_degree = g.max_degree();
  r.L_sq = spread_sq(u.u);
  r.max_u_sq = max_norm_sq(u.u);
  r.max_entry = max_abs(r.M.off);
  r.bound_L = detail::cdv_bound_holds(r.max_entry, r.L_sq, r.max_degree);
  r.bound_theorem = detail::cdv_bound_holds(r.max_entry, 4 * r.max_u_sq, r.max_degree);
  return r;
}

}  // namespace polydual
