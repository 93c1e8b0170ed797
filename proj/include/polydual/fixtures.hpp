#pragma once

// Bundled input data.

#include "polydual/pipelines.hpp"

namespace polydual::fixtures {

// Drawing of the stacked graph on p2..p8 with boundary triangle (2,4,3) and a
// positive integer stress: 1 on the edges 5-2, 5-3, 5-4, -2 on the boundary
// and 3 elsewhere. Stacking vertex 1 onto the boundary gives the graph whose
// dual is the truncated tetrahedron.
inline StackedInput truncated_tetrahedron() {
  const std::vector<VertexId> ids{2, 3, 4, 5, 6, 7, 8};
  const std::vector<std::vector<VertexId>> faces{{2, 3, 6}, {3, 5, 6}, {5, 2, 6}, {3, 4, 7}, {4, 5, 7},
                                                 {5, 3, 7}, {4, 2, 8}, {2, 5, 8}, {5, 4, 8}, {2, 4, 3}};
  StackedInput in;
  in.p.graph = PlanarGraph(ids, faces);
  in.p.p = {{-3, -3}, {6, -3}, {-3, 6}, {0, 0}, {1, -2}, {1, 1}, {-2, 1}};
  in.p.boundary_face = 9;
  in.apex = 1;
  const auto& g = in.p.graph;
  in.stress = Stress::zero(g);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const VertexId a = g.id(g.edges()[e].a), b = g.id(g.edges()[e].b);
    int w = 3;
    if ((a == 5 && b <= 4) || (b == 5 && a <= 4)) w = 1;
    if (a <= 4 && b <= 4) w = -2;
    in.stress.w[e] = w;
  }
  return in;
}

}  // namespace polydual::fixtures
