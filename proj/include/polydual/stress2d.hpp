#pragma once

// Equilibrium stresses of planar drawings, Maxwell-Cremona liftings, atomic
// wheel stresses and the integer reverse lifting.

#include <deque>
#include <string>
#include <vector>

#include "polydual/embedding.hpp"

namespace polydual {

template <class V>
struct EquilibriumReport {
  bool ok = true;
  std::vector<std::pair<Index, V>> residuals;  // nonzero residuals only
};

// Sum_j w_ij (x_j - x_i) at every vertex.
template <class V>
EquilibriumReport<V> check_equilibrium(const PlanarGraph& g, const std::vector<V>& x, const Stress& w) {
  std::vector<V> r(g.num_vertices());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (w.w[e] == 0) continue;
    const auto [a, b] = g.edges()[e];
    const V d = w.w[e] * (x[b] - x[a]);
    r[a] += d;
    r[b] -= d;
  }
  EquilibriumReport<V> report;
  for (Index v = 0; v < r.size(); ++v) {
    if (!r[v].is_zero()) {
      report.ok = false;
      report.residuals.emplace_back(v, r[v]);
    }
  }
  return report;
}

inline EquilibriumReport<Vec2> check_equilibrium(const Embedding2D& e, const Stress& w) {
  return check_equilibrium(e.graph, e.p, w);
}
inline EquilibriumReport<Vec3> check_equilibrium(const Embedding3D& e, const Stress& w) {
  return check_equilibrium(e.graph, e.u, w);
}

// Orientation of a face of a drawing (twice the signed area of the polygon).
inline Rational face_area2(const Embedding2D& e, FaceIndex f) {
  const auto& c = e.graph.face(f);
  Rational s = 0;
  for (std::size_t k = 0; k < c.size(); ++k) s += cross(e.p[c[k]], e.p[c[(k + 1) % c.size()]]);
  return s;
}

// Every consecutive triple of every face is noncollinear.
inline bool is_nondegenerate(const Embedding2D& e) {
  for (FaceIndex f = 0; f < e.graph.num_faces(); ++f) {
    const auto& c = e.graph.face(f);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (bracket3(e.p[c[k]], e.p[c[(k + 1) % c.size()]], e.p[c[(k + 2) % c.size()]]) == 0) return false;
  }
  return true;
}

// Stress of a lifted triangulation:
//   w_ij = [u_i u_j u_k u_l] / ([p_i p_j p_k] [p_l p_j p_i])
// with k on the face left of i->j and l on the face left of j->i.
inline Stress canonical_projection_stress(const Embedding2D& p, const Embedding3D& u) {
  const auto& g = p.graph;
  if (!g.is_simplicial()) throw PreconditionError("non_simplicial", "canonical stress needs a triangulation");
  if (u.u.size() != p.p.size()) throw PreconditionError("size_mismatch", "embeddings differ in size");
  for (Index v = 0; v < p.p.size(); ++v)
    if (u.u[v].x != p.p[v].x || u.u[v].y != p.p[v].y)
      throw PreconditionError("not_a_projection", "2d points are not the vertical projection of the lifting");
  Stress w = Stress::zero(g);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [i, j] = g.edges()[e];
    const auto ctx = g.context(i, j);
    const Index k = g.next_on_face(ctx.left, j);
    const Index l = g.next_on_face(ctx.right, i);
    const Rational den = bracket3(p.p[i], p.p[j], p.p[k]) * bracket3(p.p[l], p.p[j], p.p[i]);
    if (den == 0) throw PreconditionError("degenerate_face", "a face of the projection is degenerate");
    w.w[e] = bracket4(u.u[i], u.u[j], u.u[k], u.u[l]) / den;
  }
  return w;
}

inline Stress canonical_projection_stress(const Embedding3D& u) {
  return canonical_projection_stress(vertical_projection(u), u);
}

struct Lifting {
  std::vector<Rational> z;
  FaceIndex root = 0;
};

namespace detail {

// h(x) = a.x + b.y + c
struct Affine2 {
  Rational a, b, c;
  Rational operator()(const Vec2& x) const { return a * x.x + b * x.y + c; }
  friend bool operator==(const Affine2&, const Affine2&) = default;
  Affine2& operator+=(const Affine2& o) { a += o.a; b += o.b; c += o.c; return *this; }
};

// -w [p q x] as an affine function of x.
inline Affine2 fold(const Rational& w, const Vec2& p, const Vec2& q) {
  const Vec2 d = q - p;
  return {w * d.y, -w * d.x, w * cross(d, p)};
}

}  // namespace detail

// Heights of the polyhedral lifting induced by w, with the root face flat at
// height zero. Face height functions are propagated across the dual graph
// breadth first; every remaining dual edge and every vertex is then checked
// exactly.
inline Lifting maxwell_cremona_lift(const Embedding2D& p, const Stress& w, FaceIndex root) {
  const auto& g = p.graph;
  require_valid(g);
  if (root >= g.num_faces()) throw PreconditionError("bad_root", "root face index out of range");
  if (!is_nondegenerate(p)) throw PreconditionError("degenerate_face", "drawing has a degenerate face");
  if (auto eq = check_equilibrium(p, w); !eq.ok)
    throw PreconditionError("not_in_equilibrium", "stress is not in equilibrium at vertex " +
                                                      std::to_string(g.id(eq.residuals.front().first)));

  std::vector<std::optional<detail::Affine2>> h(g.num_faces());
  h[root] = detail::Affine2{};
  std::deque<FaceIndex> queue{root};
  auto expected = [&](FaceIndex from, Index i, Index j) {
    // crossing edge (i,j) from the face on its right to the face on its left
    detail::Affine2 next = *h[from];
    next += detail::fold(w.get(g, i, j), p.p[i], p.p[j]);
    return next;
  };
  while (!queue.empty()) {
    const FaceIndex f = queue.front();
    queue.pop_front();
    const auto& c = g.face(f);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Index a = c[k], b = c[(k + 1) % c.size()];
      const FaceIndex nb = *g.left_face(b, a);
      const auto value = expected(f, b, a);
      if (!h[nb]) {
        h[nb] = value;
        queue.push_back(nb);
      } else if (!(*h[nb] == value)) {
        throw ConsistencyError("lift_inconsistent", "face heights disagree across a dual cycle");
      }
    }
  }

  Lifting out{std::vector<Rational>(g.num_vertices()), root};
  std::vector<bool> seen(g.num_vertices(), false);
  for (FaceIndex f = 0; f < g.num_faces(); ++f) {
    for (Index v : g.face(f)) {
      const Rational z = (*h[f])(p.p[v]);
      if (!seen[v]) {
        out.z[v] = z;
        seen[v] = true;
      } else if (out.z[v] != z) {
        throw ConsistencyError("lift_inconsistent", "lifted faces are not planar");
      }
    }
  }
  return out;
}

inline Embedding3D apply_lifting(const Embedding2D& p, const Lifting& l) {
  Embedding3D u{p.graph, {}};
  for (Index v = 0; v < p.p.size(); ++v) u.u.push_back({p.p[v].x, p.p[v].y, l.z[v]});
  return u;
}

// Product of [p_j p_j+1 p_c] over the base of a wheel.
inline Rational wheel_bracket_product(const Wheel& w, const std::vector<Vec2>& p) {
  Rational prod = 1;
  const std::size_t k = w.base.size();
  for (std::size_t j = 0; j < k; ++j) prod *= bracket3(p[w.base[j]], p[w.base[(j + 1) % k]], p[w.center]);
  return prod;
}

// Small atomic stress of a wheel: the stress of lifting the center to height
// one while the base stays at zero.
inline Stress atomic_stress_small(const PlanarGraph& host, const Wheel& w, const std::vector<Vec2>& p) {
  Stress s = Stress::zero(host);
  const std::size_t k = w.base.size();
  const Vec2& pc = p[w.center];
  for (std::size_t i = 0; i < k; ++i) {
    const Vec2& prev = p[w.base[(i + k - 1) % k]];
    const Vec2& cur = p[w.base[i]];
    const Vec2& next = p[w.base[(i + 1) % k]];
    const Rational t_prev = bracket3(prev, cur, pc);
    const Rational t_next = bracket3(cur, next, pc);
    if (t_prev == 0 || t_next == 0) throw PreconditionError("collinear_wheel", "wheel has a collinear spoke triangle");
    s.set(host, w.base[i], w.base[(i + 1) % k], Rational(-1) / t_next);
    s.set(host, w.base[i], w.center, bracket3(prev, cur, next) / (t_prev * t_next));
  }
  return s;
}

inline Stress atomic_stress_small(const Embedding2D& p, const Wheel& w) {
  return atomic_stress_small(p.graph, w, p.p);
}

// Small atomic stress times the product of the spoke triangle brackets;
// integral for integer coordinates.
inline Stress atomic_stress_large(const Embedding2D& p, const Wheel& w) {
  return wheel_bracket_product(w, p.p) * atomic_stress_small(p, w);
}

// Coefficients a_v with w = sum_v a_v * small_atomic(W_v): the heights of the
// lifting of w, which is flat on the root face (the boundary face if set).
inline std::vector<Rational> wheel_decompose_stress(const Embedding2D& p, const Stress& w) {
  if (!p.graph.is_simplicial()) throw PreconditionError("non_simplicial", "wheel decomposition needs a triangulation");
  const auto lift = maxwell_cremona_lift(p, w, p.boundary_face.value_or(0));
  Stress sum = Stress::zero(p.graph);
  const auto ws = wheels(p.graph);
  for (Index v = 0; v < ws.size(); ++v)
    if (lift.z[v] != 0) sum += lift.z[v] * atomic_stress_small(p, ws[v]);
  if (!(sum == w)) throw ConsistencyError("decomposition", "wheel decomposition does not re-sum to the stress");
  return lift.z;
}

struct ReverseLiftResult {
  Embedding2D p;
  Stress canonical;            // rational canonical stress of the projection
  Stress stress;               // integer stress with the same signs
  std::vector<Rational> alpha; // coefficients against the large atomic stresses
  Integer C;
  Rational max_atomic;         // max |large atomic stress entry|
  Rational min_canonical;      // min |canonical stress entry|
  std::size_t max_degree = 0;
  Rational L_sq;               // max |u_i - u_j|^2
  Rational max_u_sq;           // max |u_i|^2
  Rational max_stress;         // max |w_ij|
  bool bound_L = false;        // |w| < 8 L^(2D+5)
  bool bound_theorem = false;  // |w| < 8 (2 max|u|)^(2D+5)
};

namespace detail {

// |x| < 8 r^e with r = sqrt(r_sq), compared after squaring.
inline bool below_eight_power(const Rational& x, const Rational& r_sq, unsigned e) {
  Rational rhs = 64;
  for (unsigned k = 0; k < e; ++k) rhs *= r_sq;
  return x * x < rhs;
}

}  // namespace detail

// Integer equilibrium stress of the vertical projection of an integer
// triangulated surface, with the sign pattern of the canonical stress.
inline ReverseLiftResult reverse_maxwell_cremona(const Embedding3D& u) {
  const auto& g = u.graph;
  require_valid(g, true);
  if (!is_integer(u)) throw PreconditionError("non_integer", "coordinates must be integers");
  ReverseLiftResult r;
  r.p = vertical_projection(u);
  for (FaceIndex f = 0; f < g.num_faces(); ++f)
    if (face_area2(r.p, f) == 0) throw PreconditionError("vertical_face", "face " + std::to_string(f) + " is vertical");
  r.canonical = canonical_projection_stress(r.p, u);
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (r.canonical.w[e] == 0)
      throw PreconditionError("coplanar_faces", "two adjacent faces are coplanar");

  const auto ws = wheels(g);
  const auto z = wheel_decompose_stress(r.p, r.canonical);
  std::vector<Stress> large;
  large.reserve(ws.size());
  r.max_atomic = 0;
  r.alpha.resize(ws.size());
  for (Index k = 0; k < ws.size(); ++k) {
    const Rational prod = wheel_bracket_product(ws[k], r.p.p);
    large.push_back(prod * atomic_stress_small(r.p, ws[k]));
    r.max_atomic = std::max(r.max_atomic, max_abs(large.back().w));
    r.alpha[k] = z[k] / prod;
  }
  r.min_canonical = abs(r.canonical.w.front());
  for (const auto& x : r.canonical.w) r.min_canonical = std::min(r.min_canonical, Rational(abs(x)));
  r.C = ceil(4 * r.max_atomic / r.min_canonical);

  r.stress = Stress::zero(g);
  for (Index k = 0; k < ws.size(); ++k) {
    const Integer coef = floor(Rational(r.C) * r.alpha[k]);
    if (coef != 0) r.stress += Rational(coef) * large[k];
  }
  if (!is_integer(r.stress.w)) throw ConsistencyError("non_integer_stress", "rounded stress is not integral");
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (sign(r.stress.w[e]) != sign(r.canonical.w[e]))
      throw ConsistencyError("sign_mismatch", "rounded stress changed a sign");
  if (!check_equilibrium(r.p, r.stress).ok)
    throw ConsistencyError("not_in_equilibrium", "rounded stress is not in equilibrium");

  r.max_degree = g.max_degree();
  r.L_sq = spread_sq(u.u);
  r.max_u_sq = max_norm_sq(u.u);
  r.max_stress = max_abs(r.stress.w);
  const unsigned e = static_cast<unsigned>(2 * r.max_degree + 5);
  r.bound_L = detail::below_eight_power(r.max_stress, r.L_sq, e);
  r.bound_theorem = detail::below_eight_power(r.max_stress, 4 * r.max_u_sq, e);
  return r;
}

}  // namespace polydual
