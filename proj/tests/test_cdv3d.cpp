#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "support/worked_example.hpp"

using namespace polydual;

namespace {

Embedding3D example_u() {
  return stacking_embed(fixtures::truncated_tetrahedron(), StackingMode::paper_example).u;
}

// Published matrix over vertex ids first..first+N-1, restricted to graph g.
template <std::size_t N>
CdvMatrix from_table(const PlanarGraph& g, const std::array<std::array<int, N>, N>& t, VertexId first) {
  auto M = CdvMatrix::zero(g);
  for (Index v = 0; v < g.num_vertices(); ++v) {
    const auto r = g.id(v) - first;
    if (r >= 0 && r < static_cast<VertexId>(N)) M.diagonal[v] = t[r][r];
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto ra = g.id(g.edges()[e].a) - first, rb = g.id(g.edges()[e].b) - first;
    if (ra >= 0 && rb >= 0 && ra < static_cast<VertexId>(N) && rb < static_cast<VertexId>(N)) M.off[e] = t[ra][rb];
  }
  return M;
}

// Vector phi with <phi, a> = <phi, b> = <phi, c> = 1, by Cramer's rule.
Vec3 solve_polar(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Rational d = oracle::det3({a.x, b.x, c.x}, {a.y, b.y, c.y}, {a.z, b.z, c.z});
  const Vec3 one{1, 1, 1};
  const Vec3 cx{a.x, b.x, c.x}, cy{a.y, b.y, c.y}, cz{a.z, b.z, c.z};
  return {oracle::det3(one, cy, cz) / d, oracle::det3(cx, one, cz) / d, oracle::det3(cx, cy, one) / d};
}

// Residual of sum_j M_ij u_j at each vertex by direct summation.
std::vector<Vec3> residuals(const Embedding3D& u, const CdvMatrix& M) {
  std::vector<Vec3> r(u.u.size());
  for (Index i = 0; i < u.u.size(); ++i) {
    r[i] = M.diagonal[i] * u.u[i];
    for (Index j : u.graph.neighbours(i)) r[i] += M.get(u.graph, i, j) * u.u[j];
  }
  return r;
}

// True if beta_i - target_i = <v, u_i> for one v and all i.
bool differs_by_linear(const Embedding3D& u, const std::vector<Rational>& beta, const std::vector<Rational>& target) {
  std::vector<Rational> d(beta.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = beta[i] - target[i];
  // find three independent vertices
  for (Index a = 0; a < u.u.size(); ++a)
    for (Index b = a + 1; b < u.u.size(); ++b)
      for (Index c = b + 1; c < u.u.size(); ++c) {
        const Vec3 rows[3] = {u.u[a], u.u[b], u.u[c]};
        const Rational det = oracle::det3(rows[0], rows[1], rows[2]);
        if (det == 0) continue;
        // solve <v, u_x> = d_x for x in {a,b,c}
        const Vec3 rhs{d[a], d[b], d[c]};
        const Vec3 col0{rows[0].x, rows[1].x, rows[2].x}, col1{rows[0].y, rows[1].y, rows[2].y},
            col2{rows[0].z, rows[1].z, rows[2].z};
        const Vec3 v{oracle::det3(rhs, col1, col2) / det, oracle::det3(col0, rhs, col2) / det,
                     oracle::det3(col0, col1, rhs) / det};
        for (Index i = 0; i < u.u.size(); ++i)
          if (dot(v, u.u[i]) != d[i]) return false;
        return true;
      }
  return false;
}

}  // namespace

TEST(CheckCdv, PublishedFinalMatrix) {
  const auto u = example_u();
  const auto M = from_table(u.graph, worked::M, 1);
  const auto r = check_cdv(u, M);
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.positive);
  // the published matrix is zero exactly off the edges
  for (Index a = 0; a < 8; ++a)
    for (Index b = 0; b < 8; ++b)
      if (a != b && !u.graph.has_edge(a, b))
        EXPECT_EQ(worked::M[u.graph.id(a) - 1][u.graph.id(b) - 1], 0);
}

TEST(CheckCdv, AllOnesOnBalancedTetrahedron) {
  const auto u = gen::tetrahedron();
  Vec3 s;
  for (const auto& x : u.u) s += x;
  ASSERT_TRUE(s.is_zero());
  auto M = CdvMatrix::zero(u.graph);
  for (auto& x : M.diagonal) x = 1;
  for (auto& x : M.off) x = 1;
  EXPECT_TRUE(check_cdv(u, M).ok);
}

TEST(CheckCdv, PerturbedEntryLocalized) {
  const auto u = example_u();
  auto M = from_table(u.graph, worked::M, 1);
  const Index a = u.graph.index(5), b = u.graph.index(6);
  M.off[*u.graph.edge_index(a, b)] += 1;
  const auto r = check_cdv(u, M);
  EXPECT_FALSE(r.ok);
  const auto direct = residuals(u, M);
  std::set<VertexId> bad;
  for (const auto& [v, res] : r.residuals) {
    bad.insert(u.graph.id(v));
    EXPECT_EQ(res, direct[v]);
  }
  EXPECT_EQ(bad, (std::set<VertexId>{5, 6}));
}

TEST(CheckCdv, LinearCombinationsStayCdv) {
  const auto u = gen::octahedron();
  const auto A = canonical_cdv(u).M;
  const auto ws = wheels(u.graph);
  const auto B = atomic_cdv_small(u, ws[2]);
  EXPECT_TRUE(check_cdv(u, A + B).ok);
  EXPECT_TRUE(check_cdv(u, Rational(-7, 3) * A + Rational(5) * B).ok);
}

TEST(CdvFromStress, ZeroStress) {
  const auto in = fixtures::truncated_tetrahedron();
  const auto M = cdv_from_stress(lift_to_plane(in.p), Stress::zero(in.p.graph));
  EXPECT_EQ(M, CdvMatrix::zero(in.p.graph));
}

TEST(CdvFromStress, PublishedStressPart) {
  const auto in = fixtures::truncated_tetrahedron();
  const auto u = lift_to_plane(in.p);
  const auto M = cdv_from_stress(u, in.stress);
  EXPECT_EQ(M, from_table(in.p.graph, worked::M1, 2));
  EXPECT_TRUE(check_cdv(u, M).ok);
}

TEST(CdvFromStress, ConedAgreesWithPlainForZeroApexWeights) {
  const auto in = fixtures::truncated_tetrahedron();
  const auto u = lift_to_plane(in.p, 3);
  const std::vector<Rational> zeros(in.p.p.size());
  EXPECT_EQ(cdv_from_stress(u, in.stress, StressMode::coned, zeros), cdv_from_stress(u, in.stress));
}

TEST(CdvFromStress, ConedWithApexWeights) {
  // with sum u = 0, weight 1 on every edge and -4 towards the apex at the
  // origin is in equilibrium on the coned graph
  const auto u = gen::tetrahedron();
  auto w = Stress::zero(u.graph);
  for (auto& x : w.w) x = 1;
  const std::vector<Rational> apex(4, Rational(-4));
  const auto M = cdv_from_stress(u, w, StressMode::coned, apex);
  EXPECT_TRUE(check_cdv(u, M).ok);
}

TEST(CdvFromStress, NonEquilibriumRejected) {
  auto in = fixtures::truncated_tetrahedron();
  in.stress.w[0] += 1;
  EXPECT_THROW(cdv_from_stress(lift_to_plane(in.p), in.stress), PreconditionError);
}

TEST(FlatCdv, RecoversPublishedStress) {
  const auto in = fixtures::truncated_tetrahedron();
  const auto u = lift_to_plane(in.p);
  EXPECT_EQ(stress_from_flat_cdv(u, from_table(in.p.graph, worked::M1, 2)), in.stress);
  EXPECT_EQ(stress_from_flat_cdv(u, CdvMatrix::zero(u.graph)), Stress::zero(u.graph));
}

TEST(FlatCdv, RoundTrip) {
  gen::Rng rng(4);
  const auto p = gen::cap_drawing(gen::random_cap_retry(rng, 6, 10));
  const auto w = gen::random_stress(rng, p);
  const auto u = lift_to_plane(p, Rational(5, 2));
  EXPECT_EQ(stress_from_flat_cdv(u, cdv_from_stress(u, w)), w);
}

TEST(FlatCdv, PlaneThroughOriginRejected) {
  const auto in = fixtures::truncated_tetrahedron();
  const auto u = lift_to_plane(in.p, 0);
  EXPECT_THROW(stress_from_flat_cdv(u, CdvMatrix::zero(u.graph)), PreconditionError);
  EXPECT_THROW(stress_from_flat_cdv(example_u(), CdvMatrix::zero(example_u().graph)), PreconditionError);
}

TEST(Rescale, IdentityAndUniformScaling) {
  const auto u = gen::octahedron();
  const auto M = canonical_cdv(u).M;
  EXPECT_EQ(rescale_cdv(u, u, M), M);
  auto r = u;
  for (auto& x : r.u) x = Rational(2) * x;
  const auto R = rescale_cdv(u, r, M);
  for (std::size_t e = 0; e < M.off.size(); ++e) EXPECT_EQ(R.off[e], M.off[e] / 4);
  EXPECT_TRUE(check_cdv(r, R).ok);
}

TEST(Rescale, RandomFactorsRoundTrip) {
  gen::Rng rng(12);
  const auto u = gen::icosahedron();
  const auto M = canonical_cdv(u).M;
  for (int t = 0; t < 10; ++t) {
    auto r = u;
    for (auto& x : r.u) {
      Rational l(gen::uniform(rng, 1, 9), gen::uniform(rng, 1, 9));
      if (rng() % 2) l = -l;
      x = l * x;
    }
    const auto R = rescale_cdv(u, r, M);
    EXPECT_TRUE(check_cdv(r, R).ok);
    EXPECT_EQ(rescale_cdv(r, u, R), M);
  }
}

TEST(Rescale, NonParallelRejected) {
  const auto u = gen::octahedron();
  auto r = u;
  r.u[0] = {1, 1, 0};
  EXPECT_THROW(rescale_cdv(u, r, canonical_cdv(u).M), PreconditionError);
  r.u[0] = {0, 0, 0};
  EXPECT_THROW(rescale_cdv(u, r, canonical_cdv(u).M), PreconditionError);
}

TEST(Projection, PointsAlreadyInPlane) {
  const auto in = fixtures::truncated_tetrahedron();
  const auto u = lift_to_plane(in.p);
  const auto M = cdv_from_stress(u, in.stress);
  const auto pr = project_cdv(u, {0, 0, 1}, M);
  for (const auto& l : pr.projection.lambda) EXPECT_EQ(l, 1);
  EXPECT_EQ(pr.stress, in.stress);
  EXPECT_EQ(unproject_stress(u, {0, 0, 1}, in.stress), M);
}

TEST(Projection, WorkedExampleRoundTrip) {
  const auto u = example_u();
  const auto M = from_table(u.graph, worked::M, 1);
  for (const Vec3& n : {Vec3{0, 0, 1}, Vec3{1, 1, 1}, Vec3{1, -2, 3}}) {
    bool ok = true;
    for (const auto& x : u.u) ok = ok && dot(n, x) != 0;
    if (!ok) continue;
    const auto pr = project_cdv(u, n, M);
    // projected points lie on the plane and carry an equilibrium stress
    for (const auto& x : pr.projection.p.u) EXPECT_EQ(dot(n, x), 1);
    EXPECT_TRUE(check_equilibrium(pr.projection.p, pr.stress).ok);
    EXPECT_TRUE(check_equilibrium(chart(pr.projection), pr.stress).ok);
    EXPECT_EQ(unproject_stress(u, n, pr.stress), M);
  }
}

TEST(Projection, RandomRoundTrips) {
  gen::Rng rng(99);
  for (int t = 0; t < 10; ++t) {
    const auto u = normalize_origin(gen::random_simplicial_retry(rng, 8, 6, 0)).u;
    const auto M = canonical_cdv(u).M;
    const Vec3 n = choose_projection_normal(u.u);
    const auto pr = project_cdv(u, n, M);
    EXPECT_EQ(unproject_stress(u, n, pr.stress), M);
    const auto w = gen::random_stress(rng, chart(pr.projection));
    EXPECT_EQ(project_cdv(u, n, unproject_stress(u, n, w)).stress, w);
  }
}

TEST(Projection, AtomicMatrixProjectsToScaledAtomicStress) {
  const auto u = gen::icosahedron();
  const Vec3 n = choose_projection_normal(u.u);
  const auto cp = central_projection(u, n);
  const auto e = chart(cp);
  for (const auto& w : wheels(u.graph)) {
    const auto pr = project_cdv(u, n, atomic_cdv_small(u, w));
    const auto expected = cp.lambda[w.center] * atomic_stress_small(cp.p.graph, w, e.p);
    // the chart drops one axis, which rescales every bracket by the same factor
    const auto ratio = pr.stress.w[*u.graph.edge_index(w.center, w.base[0])] /
                       expected.w[*u.graph.edge_index(w.center, w.base[0])];
    EXPECT_EQ(pr.stress, ratio * expected);
    if (n.z != 0 && n.x == 0 && n.y == 0) EXPECT_EQ(ratio, n.z);
  }
}

TEST(Projection, ZeroNormalOrParallelVertexRejected) {
  const auto u = gen::octahedron();
  const auto M = canonical_cdv(u).M;
  EXPECT_THROW(project_cdv(u, {0, 0, 0}, M), PreconditionError);
  EXPECT_THROW(project_cdv(u, {0, 0, 1}, M), PreconditionError);  // (1,0,0) is parallel to z = 1
}

TEST(CanonicalCdv, OctahedronSignVectors) {
  const auto u = gen::octahedron();
  const auto c = canonical_cdv(u);
  std::set<std::vector<Rational>> seen;
  for (FaceIndex f = 0; f < u.graph.num_faces(); ++f) {
    const auto& t = u.graph.face(f);
    EXPECT_EQ(c.phi[f], solve_polar(u.u[t[0]], u.u[t[1]], u.u[t[2]]));
    for (int k = 0; k < 3; ++k) EXPECT_EQ(abs(c.phi[f][k]), 1);
    seen.insert({c.phi[f].x, c.phi[f].y, c.phi[f].z});
  }
  EXPECT_EQ(seen.size(), 8u);
  const Rational m = c.M.off[0];
  EXPECT_GT(m, 0);
  for (const auto& x : c.M.off) EXPECT_EQ(x, m);
  EXPECT_TRUE(check_cdv(u, c.M).ok);
}

TEST(CanonicalCdv, EdgeRelationHolds) {
  for (const auto& u : {gen::octahedron(), gen::icosahedron(), gen::tetrahedron(), gen::cube({-1, -1, -1})}) {
    auto v = u;
    if (u.graph.num_vertices() == 8)
      for (auto& x : v.u) x = Rational(2) * x + Vec3{1, 1, 1};  // cube centred at the origin
    const auto c = canonical_cdv(v);
    EXPECT_TRUE(check_cdv(v, c.M).ok);
    EXPECT_TRUE(check_cdv(v, c.M).positive);
    for (std::size_t e = 0; e < v.graph.num_edges(); ++e) {
      const auto [i, j] = v.graph.edges()[e];
      const auto ctx = v.graph.context(i, j);
      EXPECT_EQ(c.phi[ctx.left] - c.phi[ctx.right], c.M.off[e] * oracle::cross(v.u[i], v.u[j]));
    }
    for (FaceIndex f = 0; f < v.graph.num_faces(); ++f)
      for (Index x : v.graph.face(f)) EXPECT_EQ(dot(c.phi[f], v.u[x]), 1);
  }
}

TEST(CanonicalCdv, ScalingHalvesPhi) {
  const auto u = gen::icosahedron();
  auto r = u;
  for (auto& x : r.u) x = Rational(2) * x;
  const auto a = canonical_cdv(u), b = canonical_cdv(r);
  for (FaceIndex f = 0; f < u.graph.num_faces(); ++f) EXPECT_EQ(b.phi[f], a.phi[f] / 2);
  // phi halves and each cross product grows by 4, so edge entries shrink by 8
  for (std::size_t e = 0; e < a.M.off.size(); ++e) EXPECT_EQ(b.M.off[e], a.M.off[e] / 8);
}

TEST(CanonicalCdv, FacePlaneThroughOriginRejected) {
  const auto u = gen::polytope_from_points({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  ASSERT_TRUE(u);
  EXPECT_THROW(canonical_cdv(*u), PreconditionError);
}

TEST(AtomicCdv, PlanarWheelMatchesUnprojectedStress) {
  const auto in = fixtures::truncated_tetrahedron();
  const auto u = lift_to_plane(in.p);
  for (const auto& w : wheels(u.graph)) {
    const auto expected = unproject_stress(u, {0, 0, 1}, atomic_stress_small(in.p, w));
    EXPECT_EQ(atomic_cdv_small(u, w), expected);
  }
}

TEST(AtomicCdv, LargeIsIntegral) {
  for (const auto& u : {gen::octahedron(), gen::icosahedron(), example_u()}) {
    for (const auto& w : wheels(u.graph)) {
      const auto L = atomic_cdv_large(u, w);
      EXPECT_TRUE(is_integer(L.off));
      EXPECT_TRUE(check_cdv(u, L).ok);
      EXPECT_EQ(L, wheel_det_product(w, u.u) * atomic_cdv_small(u, w));
    }
  }
}

TEST(AtomicCdv, UniqueUpToScale) {
  // a pyramid is its own wheel; its canonical matrix must be a multiple
  gen::Rng rng(6);
  const auto pyr = gen::polytope_from_points({{3, 0, -1}, {0, 3, -1}, {-3, 0, -1}, {-1, -3, -1}, {0, 0, 2}}, false);
  ASSERT_TRUE(pyr);
  const auto& g = pyr->graph;
  const Index apex = 4;
  ASSERT_EQ(g.degree(apex), 4u);
  const Wheel w{apex, g.rotation(apex)};
  const auto A = atomic_cdv_small(*pyr, w);
  const auto C = canonical_cdv(*pyr).M;
  const Rational s = C.off[0] / A.off[0];
  EXPECT_EQ(C, s * A);
}

TEST(AtomicCdv, CoplanarWithOriginRejected) {
  const auto in = fixtures::truncated_tetrahedron();
  const auto u = lift_to_plane(in.p, 0);
  EXPECT_THROW(atomic_cdv_small(u, wheels(u.graph)[4]), PreconditionError);
}

TEST(DecomposeCdv, AtomicGivesIndicatorUpToGauge) {
  const auto u = gen::icosahedron();
  const auto ws = wheels(u.graph);
  for (Index k : {Index{0}, Index{5}, Index{11}}) {
    const auto d = wheel_decompose_cdv(u, atomic_cdv_small(u, ws[k]));
    std::vector<Rational> target(ws.size());
    target[k] = 1;
    EXPECT_TRUE(differs_by_linear(u, d.beta, target));
  }
}

TEST(DecomposeCdv, CanonicalResums) {
  for (const auto& u : {gen::octahedron(), gen::icosahedron(), gen::tetrahedron()}) {
    const auto M = canonical_cdv(u).M;
    const auto d = wheel_decompose_cdv(u, M);
    const auto ws = wheels(u.graph);
    auto sum = CdvMatrix::zero(u.graph);
    for (Index k = 0; k < ws.size(); ++k) sum += d.beta[k] * atomic_cdv_small(u, ws[k]);
    EXPECT_EQ(sum, M);
  }
}

TEST(DecomposeCdv, GaugeShiftLeavesSumUnchanged) {
  const auto u = gen::octahedron();
  const auto M = canonical_cdv(u).M;
  const auto d = wheel_decompose_cdv(u, M);
  const auto ws = wheels(u.graph);
  const Vec3 v{3, -2, 7};
  auto sum = CdvMatrix::zero(u.graph);
  for (Index k = 0; k < ws.size(); ++k) sum += (d.beta[k] + dot(v, u.u[k])) * atomic_cdv_small(u, ws[k]);
  EXPECT_EQ(sum, M);
}

TEST(DecomposeCdv, ProjectionNormalIsDeterministic) {
  EXPECT_EQ(choose_projection_normal({{1, 1, 1}, {2, 3, 4}}), (Vec3{0, 0, 1}));
  EXPECT_EQ(choose_projection_normal({{1, 1, 0}, {2, 3, 0}}), (Vec3{0, 1, 0}));
  EXPECT_EQ(choose_projection_normal({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), (Vec3{1, 1, 1}));
}

TEST(IntegralCdv, OctahedronMatchesCanonicalSigns) {
  const auto u = gen::octahedron();
  const auto r = integral_positive_cdv(u);
  const auto c = canonical_cdv(u).M;
  EXPECT_TRUE(check_cdv(u, r.M).ok);
  for (std::size_t e = 0; e < r.M.off.size(); ++e) {
    EXPECT_TRUE(is_integer(r.M.off[e]));
    EXPECT_GT(r.M.off[e], 0);
    EXPECT_EQ(sign(r.M.off[e]), sign(c.off[e]));
  }
  EXPECT_TRUE(r.bound_L);
}

TEST(IntegralCdv, IcosahedronBoundHolds) {
  const auto r = integral_positive_cdv(gen::icosahedron());
  EXPECT_TRUE(r.bound_L);
  EXPECT_TRUE(r.bound_theorem);
  EXPECT_EQ(r.max_degree, 5u);
}

TEST(IntegralCdv, Tetrahedron) {
  const auto u = gen::tetrahedron();
  const auto r = integral_positive_cdv(u);
  EXPECT_TRUE(check_cdv(u, r.M).ok);
  EXPECT_TRUE(check_cdv(u, r.M).positive);
  EXPECT_TRUE(is_integer(r.M.off));
}

TEST(IntegralCdv, PreconditionsEnforced) {
  EXPECT_THROW(integral_positive_cdv(gen::cube({-1, -1, -1})), PreconditionError);  // not simplicial
  auto off_centre = gen::octahedron();
  for (auto& x : off_centre.u) x += Vec3{3, 0, 0};
  EXPECT_THROW(integral_positive_cdv(off_centre), PreconditionError);
  auto frac = gen::octahedron();
  frac.u[0].x = Rational(3, 2);
  EXPECT_THROW(integral_positive_cdv(frac), PreconditionError);
}

TEST(BoundHelper, ExactComparisonAtTheEdge) {
  // D = 1: 16 r^10 + 4 r^0 with r^2 = 4 is 16*1024 + 4 = 16388
  EXPECT_TRUE(detail::cdv_bound_holds(16388, 4, 1));
  EXPECT_FALSE(detail::cdv_bound_holds(16389, 4, 1));
  // D = 2: 16 r^13 + 4 r^3 with r^2 = 4: 16*8192 + 32 = 131104
  EXPECT_TRUE(detail::cdv_bound_holds(131104, 4, 2));
  EXPECT_FALSE(detail::cdv_bound_holds(131105, 4, 2));
}

TEST(Convexity, PredicatesOnKnownShapes) {
  const auto oct = gen::octahedron();
  EXPECT_TRUE(is_strictly_convex(oct));
  EXPECT_TRUE(origin_interior(oct));
  EXPECT_TRUE(check_cone_convex(oct).ok());
  const auto cube = gen::cube();
  EXPECT_TRUE(is_strictly_convex(cube));
  EXPECT_FALSE(origin_interior(cube));
  const auto centred = gen::cube({-1, -1, -1});
  auto c2 = centred;
  for (auto& x : c2.u) x = Rational(2) * x + Vec3{1, 1, 1};
  EXPECT_TRUE(origin_interior(c2));
  EXPECT_TRUE(check_cone_convex(example_u()).ok());
}

TEST(Convexity, ReflectedInputRejected) {
  auto u = gen::octahedron();
  for (auto& x : u.u) x.z = -x.z;  // same faces, mirror image
  EXPECT_FALSE(is_strictly_convex(u));
  EXPECT_FALSE(check_cone_convex(u).ok());
}
