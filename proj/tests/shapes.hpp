// Fixture bodies shared across the test suites.

#ifndef CONEVOL_TEST_SHAPES_HPP
#define CONEVOL_TEST_SHAPES_HPP

#include <cmath>
#include <vector>

#include "conevol/generators.hpp"
#include "conevol/polytope.hpp"

namespace shapes {

using conevol::Polytope;
using conevol::Vector;

inline Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

inline Vector vec3(double x, double y, double z) {
  Vector v(3);
  v << x, y, z;
  return v;
}

/// Equilateral triangle inscribed in the unit circle, centroid at the origin.
inline Polytope unit_triangle() {
  const double r3 = std::sqrt(3.0);
  return conevol::build_from_vertices(
      2, {vec2(1.0, 0.0), vec2(-0.5, r3 / 2.0), vec2(-0.5, -r3 / 2.0)});
}

/// The square [-1,1]^2.
inline Polytope square() {
  return conevol::build_from_vertices(
      2, {vec2(1, 1), vec2(1, -1), vec2(-1, 1), vec2(-1, -1)});
}

/// The cube [-1,1]^3.
inline Polytope cube() {
  conevol::GeneratorSpec spec;
  spec.name = "cube";
  spec.dim = 3;
  spec.center = false;
  return conevol::generate(spec);
}

/// Right triangle (0,0), (3,0), (0,3); centroid (1,1), origin on the boundary.
inline Polytope shifted_triangle() {
  return conevol::build_from_vertices(2, {vec2(0, 0), vec2(3, 0), vec2(0, 3)});
}

/// unit_triangle() x [-1,1]: dimension 3, five facets.
inline Polytope prism() {
  conevol::GeneratorSpec spec;
  spec.name = "prism";
  spec.center = false;
  return conevol::generate(spec);
}

}  // namespace shapes

#endif  // CONEVOL_TEST_SHAPES_HPP
