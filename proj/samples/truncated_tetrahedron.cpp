// Builds the dual of the stacked graph from the bundled drawing and prints
// the vector assigned to every primal face.

#include <iostream>

#include "polydual/polydual.hpp"

int main() {
  using namespace polydual;
  const auto in = fixtures::truncated_tetrahedron();
  const auto r = stacked_dual(in, StackingMode::paper_example,
                              Anchor{{2, 3, 6}, Vec3{0, -18, 27}});
  const auto& g = r.u.graph;
  for (FaceIndex f = 0; f < g.num_faces(); ++f) {
    std::cout << "phi(";
    for (auto id : g.face_ids(f)) std::cout << id;
    const auto& v = r.dual.phi[f];
    std::cout << ") = (" << v.x << ", " << v.y << ", " << v.z << ")\n";
  }
  std::cout << "grid " << grid_size(r.dual.phi) << "\n";
  return r.all_passed() ? 0 : 1;
}
