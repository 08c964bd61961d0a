#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "conevol/generators.hpp"
#include "conevol/polytope.hpp"
#include "oracles.hpp"
#include "shapes.hpp"

using namespace conevol;
using shapes::vec2;
using shapes::vec3;
using Catch::Approx;

namespace {

const Facet* facet_with_normal(const Polytope& p, const Vector& n, double tol = 1e-9) {
  for (const auto& f : p.facets())
    if ((f.normal - n).norm() <= tol) return &f;
  return nullptr;
}

}  // namespace

TEST_CASE("hull of the square has axis facets at offset 1") {
  const Polytope p = shapes::square();
  REQUIRE(p.vertices().size() == 4);
  REQUIRE(p.facets().size() == 4);
  for (const auto& f : p.facets()) {
    CHECK(f.offset == Approx(1.0).margin(1e-12));
    CHECK(f.normal.cwiseAbs().maxCoeff() == Approx(1.0).margin(1e-12));
    CHECK(f.measure == Approx(2.0).margin(1e-12));
  }
}

TEST_CASE("triangle facets match the planar supporting-line oracle") {
  const Polytope p = shapes::unit_triangle();
  REQUIRE(p.facets().size() == 3);

  const auto lines = oracles::support_lines_2d(
      {vec2(1.0, 0.0), vec2(-0.5, std::sqrt(3.0) / 2), vec2(-0.5, -std::sqrt(3.0) / 2)});
  REQUIRE(lines.size() == 3);
  for (const auto& line : lines) {
    const Facet* f = facet_with_normal(p, line.normal, 1e-9);
    REQUIRE(f != nullptr);
    CHECK(f->offset == Approx(line.offset).margin(1e-12));
  }

  const Facet* opposite = facet_with_normal(p, vec2(-1.0, 0.0));
  REQUIRE(opposite != nullptr);
  CHECK(opposite->offset == Approx(0.5).margin(1e-12));
  CHECK(opposite->measure == Approx(std::sqrt(3.0)).margin(1e-12));
}

TEST_CASE("collinear points are rejected") {
  CHECK_THROWS_AS(build_from_vertices(2, {vec2(0, 0), vec2(1, 1), vec2(2, 2)}),
                  DegenerateInput);
  CHECK_THROWS_AS(build_from_vertices(2, {vec2(0, 0), vec2(1, 1)}), TooFewPoints);
}

TEST_CASE("interior points are not reported as vertices") {
  const Polytope p = build_from_vertices(
      2, {vec2(1, 1), vec2(1, -1), vec2(-1, 1), vec2(-1, -1), vec2(0, 0), vec2(0.5, 0.5)});
  CHECK(p.vertices().size() == 4);
}

TEST_CASE("halfspace cube") {
  const Polytope cube = shapes::cube();
  CHECK(cube.vertices().size() == 8);
  CHECK(cube.facets().size() == 6);
  CHECK(cube.volume() == Approx(8.0).epsilon(1e-13));
  for (const auto& f : cube.facets()) {
    CHECK(f.measure == Approx(4.0).epsilon(1e-12));
    CHECK(f.offset == Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("redundant halfspace is dropped") {
  std::vector<Vector> normals{vec2(1, 0), vec2(-1, 0), vec2(0, 1), vec2(0, -1), vec2(1, 0)};
  std::vector<double> offsets{1, 1, 1, 1, 5};
  const Polytope p = build_from_halfspaces(normals, offsets);
  CHECK(p.facets().size() == 4);
  CHECK(p.volume() == Approx(4.0).epsilon(1e-13));
}

TEST_CASE("slab is reported unbounded") {
  CHECK_THROWS_AS(build_from_halfspaces({vec2(1, 0), vec2(-1, 0)}, {1, 1}), Unbounded);
  // cone opening downwards: normals span the plane but their hull misses 0
  CHECK_THROWS_AS(
      build_from_halfspaces({vec2(0, 1), vec2(1, 1).normalized(), vec2(-1, 1).normalized()},
                            {1, 1, 1}),
      Unbounded);
}

TEST_CASE("infeasible system is reported") {
  CHECK_THROWS_AS(build_from_halfspaces({vec2(1, 0), vec2(-1, 0), vec2(0, 1), vec2(0, -1)},
                                        {-2, 1, 1, 1}),
                  Infeasible);
}

TEST_CASE("volume agrees with the shoelace oracle on random polygons") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::SpherePoints;
    spec.dim = 2;
    spec.size = 9;
    spec.seed = seed;
    spec.center = false;
    const Polytope p = generate(spec);
    CHECK(p.volume() == Approx(oracles::shoelace_area(p.vertices())).epsilon(1e-12));
  }
}

TEST_CASE("triangle volume and centroid") {
  const Polytope tri = shapes::unit_triangle();
  CHECK(tri.volume() == Approx(3.0 * std::sqrt(3.0) / 4.0).epsilon(1e-13));
  CHECK(tri.centroid().norm() <= 1e-13);

  const Polytope shifted = shapes::shifted_triangle();
  CHECK(shifted.volume() == Approx(4.5).epsilon(1e-13));
  CHECK(shifted.centroid()[0] == Approx(1.0).margin(1e-12));
  CHECK(shifted.centroid()[1] == Approx(1.0).margin(1e-12));
}

TEST_CASE("volume is invariant under unimodular maps") {
  const Polytope sq = shapes::square();
  Matrix shear(2, 2);
  shear << 1, 1, 0, 1;
  CHECK(apply_linear(sq, shear).volume() == Approx(4.0).epsilon(1e-12));

  const Polytope cube = shapes::cube();
  Matrix t(3, 3);
  t << 1, 2, 0, 0, 1, -1, 1, 0, 1;  // det -1
  CHECK(apply_linear(cube, t).volume() == Approx(8.0).epsilon(1e-9));
}

TEST_CASE("volume does not depend on the cone apex") {
  for (std::uint64_t seed = 2; seed <= 10; ++seed) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::SpherePoints;
    spec.dim = 3;
    spec.size = 8;
    spec.seed = seed;
    const Polytope p = generate(spec);
    const Vector apex = 0.5 * (p.interior_point() + p.vertices()[0]);
    CHECK(volume_from_apex(p, apex) == Approx(p.volume()).epsilon(1e-10));
  }
}

TEST_CASE("facet decomposition of the volume at the origin") {
  // (1/n) sum measure_i * offset_i reproduces the volume once 0 is interior
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorSpec spec;
    spec.kind = seed % 2 ? GeneratorSpec::Kind::SpherePoints : GeneratorSpec::Kind::Halfspaces;
    spec.dim = 2 + static_cast<int>(seed % 3);
    spec.size = spec.dim == 4 ? 8 : 9;
    spec.seed = seed;
    const Polytope p = generate(spec);  // centered
    KahanSum s;
    for (const auto& f : p.facets()) s.add(f.measure * f.offset);
    CHECK(s.value() / p.dim() == Approx(p.volume()).epsilon(1e-12));
  }
}

TEST_CASE("centering moves the centroid to the origin and keeps it there") {
  const Polytope shifted = shapes::shifted_triangle();
  const Polytope c = center_at_centroid(shifted);
  CHECK(c.centroid().norm() <= 1e-10);
  const std::vector<Vector> expect{vec2(-1, -1), vec2(-1, 2), vec2(2, -1)};
  REQUIRE(c.vertices().size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK((c.vertices()[i] - expect[i]).norm() <= 1e-12);

  const Polytope cube = shapes::cube();
  const Polytope cc = center_at_centroid(cube);
  for (std::size_t i = 0; i < cube.facets().size(); ++i)
    CHECK(cc.facets()[i].offset == Approx(cube.facets()[i].offset).margin(1e-12));

  GeneratorSpec spec;
  spec.kind = GeneratorSpec::Kind::Parallelotope;
  spec.dim = 3;
  spec.seed = 77;
  spec.center = false;
  const Polytope raw = translate(generate(spec), vec3(0.3, -1.2, 0.7));
  CHECK(center_at_centroid(raw).centroid().norm() <= 1e-10);
}

TEST_CASE("vertex-halfspace round trip is stable") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::SpherePoints;
    spec.dim = 2 + static_cast<int>(seed % 3);
    spec.size = spec.dim == 4 ? 7 : 9;
    spec.seed = seed;
    const Polytope p = generate(spec);
    std::vector<Vector> normals;
    std::vector<double> offsets;
    for (const auto& f : p.facets()) {
      normals.push_back(f.normal);
      offsets.push_back(f.offset);
    }
    const Polytope q = build_from_halfspaces(normals, offsets);
    REQUIRE(q.vertices().size() == p.vertices().size());
    for (std::size_t i = 0; i < p.vertices().size(); ++i)
      CHECK((q.vertices()[i] - p.vertices()[i]).norm() <= 1e-9 * (1 + p.diameter()));
    CHECK(q.volume() == Approx(p.volume()).epsilon(1e-11));
  }
}

TEST_CASE("facet data of the centered triangle") {
  const auto data = facet_data(shapes::unit_triangle());
  REQUIRE(data.size() == 3);
  for (const auto& d : data) {
    CHECK(d.offset == Approx(0.5).margin(1e-12));
    CHECK(d.measure == Approx(std::sqrt(3.0)).margin(1e-12));
  }
}

TEST_CASE("sections through a cube") {
  const Polytope cube = shapes::cube();
  Matrix plane(3, 2);
  plane << 1, 0, 0, 1, 0, 0;
  const auto slice = restrict_to_flat(cube, vec3(0, 0, 0.5), plane);
  REQUIRE(slice.has_value());
  CHECK(slice->volume() == Approx(4.0).epsilon(1e-12));

  const auto outside = restrict_to_flat(cube, vec3(0, 0, 2.5), plane);
  CHECK_FALSE(outside.has_value());
}
