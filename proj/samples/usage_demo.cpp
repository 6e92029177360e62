// Minimal library use: equilibrium, certification and a corner iteration.
#include <cstdio>

#include "ricker/ricker.hpp"

int main() {
  using namespace ricker;
  const auto params = ModelParams::constant(2.0, 2.6);

  const auto eq = solve_equilibrium(params);
  std::printf("y_bar = %.6f  (%s)\n", eq.y_bar, std::string(to_string(eq.local_verdict)).c_str());

  const auto v = certify_constant(params);
  std::printf("verdict: %s, box [%.4f, %.4f]\n", std::string(to_string(v.tag)).c_str(), v.enclosure->lo,
              v.enclosure->hi);

  // the generic machinery takes any planar map increasing in x, decreasing in y
  const auto G = build_G(params.map(0));
  const auto enc = corner_iterate(G, *v.witness);
  std::printf("lower corner limit (%.4f, %.4f, %.4f, %.4f) after %zu steps\n", enc.lower.x, enc.lower.y, enc.lower.u,
              enc.lower.v, enc.iterations);

  const auto periodic = ModelParams::periodic(1.0, 2.0, 1.5);
  const auto tc = solve_two_cycle(periodic);
  std::printf("2-cycle {%.4f, %.4f}, Tr %.4f, Det %.4f\n", tc.z0, tc.z1, tc.trace, tc.det);
}
