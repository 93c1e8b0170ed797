// The regular octahedron with vertices at the unit vectors has a cube as its
// dual. Prints the cube's vertices.

#include <iostream>

#include "polydual/polydual.hpp"

int main() {
  using namespace polydual;
  PlanarGraph g({1, 2, 3, 4, 5, 6},
                {{1, 3, 5}, {3, 2, 5}, {2, 4, 5}, {4, 1, 5},
                 {3, 1, 6}, {2, 3, 6}, {4, 2, 6}, {1, 4, 6}});
  Embedding3D u{g, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}};
  const auto r = simplicial_dual(u);
  for (FaceIndex f = 0; f < g.num_faces(); ++f) {
    const auto& v = r.pipeline.dual.phi[f];
    std::cout << v.x << " " << v.y << " " << v.z << "\n";
  }
  return r.pipeline.all_passed() ? 0 : 1;
}
