#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "conevol/generators.hpp"
#include "conevol/rng.hpp"
#include "conevol/scc.hpp"
#include "shapes.hpp"

using namespace conevol;
using shapes::vec2;
using shapes::vec3;
using Catch::Approx;

namespace {

GeneratorSpec product_of_polygons(int dim, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = GeneratorSpec::Kind::Product;
  auto lhs = std::make_shared<GeneratorSpec>();
  lhs->kind = GeneratorSpec::Kind::SpherePoints;
  lhs->dim = 2;
  lhs->size = 5;
  lhs->seed = mix_seed(seed, 1);
  auto rhs = std::make_shared<GeneratorSpec>();
  if (dim == 3) {
    rhs->kind = GeneratorSpec::Kind::Named;
    rhs->name = "segment";
    rhs->dim = 1;
  } else {
    rhs->kind = GeneratorSpec::Kind::SpherePoints;
    rhs->dim = 2;
    rhs->size = 5;
    rhs->seed = mix_seed(seed, 2);
  }
  spec.left = std::move(lhs);
  spec.right = std::move(rhs);
  spec.dim = dim;
  return spec;
}

/// Push one vertex radially outward and recenter; breaks product structure.
Polytope perturb_vertex(const Polytope& p, std::uint64_t seed) {
  Rng rng(seed);
  const int idx = rng.uniform_int(0, static_cast<int>(p.vertices().size()) - 1);
  std::vector<Vector> pts = p.vertices();
  pts[idx] = p.interior_point() + 1.05 * (pts[idx] - p.interior_point());
  return center_at_centroid(build_from_vertices(p.dim(), pts, p.tol()));
}

}  // namespace

TEST_CASE("normal spans of the basic bodies") {
  CHECK(enumerate_normal_spans(cone_volume_measure(shapes::square())).size() == 2);
  const auto cube_spans = enumerate_normal_spans(cone_volume_measure(shapes::cube()));
  int one = 0, two = 0;
  for (const auto& s : cube_spans) (s.space.dim() == 1 ? one : two)++;
  CHECK(one == 3);
  CHECK(two == 3);
  CHECK(enumerate_normal_spans(cone_volume_measure(shapes::unit_triangle())).size() == 3);
}

TEST_CASE("span enumeration respects the combinatorial cap") {
  const auto mu = cone_volume_measure(shapes::cube());
  CHECK_THROWS_AS(enumerate_normal_spans(mu, 1e-9, 3), CombinatorialLimit);
}

TEST_CASE("every span records exactly the atoms it contains") {
  const Polytope p = generate(suite_spec(7, 31337, {3}));
  const auto mu = cone_volume_measure(p);
  for (const auto& span : enumerate_normal_spans(mu)) {
    const Subspace respanned = [&] {
      std::vector<Vector> gen;
      for (int i : span.atom_indices) gen.push_back(mu.atoms()[i].normal);
      return Subspace::from_spanning(mu.dim(), gen);
    }();
    CHECK(measure_of_subspace(mu, span.space) ==
          Approx(measure_of_subspace(mu, respanned)).margin(1e-14));
  }
}

TEST_CASE("cube saturates the concentration bound everywhere") {
  const auto report = check_scc(shapes::cube());
  CHECK(report.pass);
  CHECK(report.rows.size() == 6);
  CHECK(report.equality_count == 6);
  CHECK(report.violation_count == 0);
  CHECK(report.unwitnessed_equalities == 0);
  CHECK(report.worst_ratio == Approx(1.0).margin(1e-12));
  for (const auto& row : report.rows) {
    REQUIRE(row.witness.has_value());
    CHECK(row.witness->dim() == 3 - row.k);
  }
}

TEST_CASE("triangle stays strictly below the bound") {
  const auto report = check_scc(shapes::unit_triangle());
  CHECK(report.pass);
  CHECK(report.equality_count == 0);
  for (const auto& row : report.rows) {
    CHECK(row.status == SccStatus::Strict);
    CHECK(row.mass == Approx(std::sqrt(3.0) / 4.0).epsilon(1e-12));
    CHECK(row.bound == Approx(0.5 * 3.0 * std::sqrt(3.0) / 4.0).epsilon(1e-12));
  }
}

TEST_CASE("prism splits its mass between the axis and the cross-section") {
  const Polytope prism = shapes::prism();
  const auto mu = cone_volume_measure(prism);
  const Subspace axis = Subspace::coordinate(3, {2});
  CHECK(measure_of_subspace(mu, axis) == Approx(prism.volume() / 3.0).epsilon(1e-12));

  const auto report = check_scc(prism);
  CHECK(report.pass);
  CHECK(report.equality_count == 2);  // the axis and the cross-section plane
  for (const auto& row : report.rows) {
    if (row.status != SccStatus::Equality) continue;
    REQUIRE(row.witness.has_value());
    const Subspace expected =
        row.k == 1 ? Subspace::coordinate(3, {0, 1}) : Subspace::coordinate(3, {2});
    CHECK(row.witness->distance(expected) <= 1e-9);
  }
}

TEST_CASE("uncentered input is rejected unless auto-centering is requested") {
  const Polytope shifted = shapes::shifted_triangle();
  CHECK_THROWS_AS(check_scc(shifted), NotCentered);
  CHECK(check_scc(shifted, 1e-9, /*auto_center=*/true).pass);
}

TEST_CASE("complementary witnesses") {
  const auto cube_mu = cone_volume_measure(shapes::cube());
  const auto w = complementary_witness(cube_mu, Subspace::coordinate(3, {0}));
  REQUIRE(w.has_value());
  CHECK(w->distance(Subspace::coordinate(3, {1, 2})) <= 1e-10);

  const auto tri_mu = cone_volume_measure(shapes::unit_triangle());
  const Subspace one_normal = Subspace::from_spanning(2, {tri_mu.atoms()[0].normal});
  CHECK_FALSE(complementary_witness(tri_mu, one_normal).has_value());
}

TEST_CASE("random centered polytopes satisfy subspace concentration") {
  for (int i = 0; i < 40; ++i) {
    const Polytope p = generate(suite_spec(i, 20240811, {2, 3, 4}));
    const auto report = check_scc(p);
    CHECK(report.pass);
    CHECK(report.violation_count == 0);
  }
}

TEST_CASE("scc ratios are invariant under orthogonal maps") {
  const Polytope p = generate(suite_spec(3, 555, {3}));
  Rng rng(99);
  Matrix g(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) g(r, c) = rng.gaussian();
  const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
  const auto base = check_scc(p);
  const auto rotated = check_scc(apply_linear(p, q), 1e-9, true);
  CHECK(rotated.worst_ratio == Approx(base.worst_ratio).epsilon(1e-9));
  CHECK(rotated.rows.size() == base.rows.size());
}

TEST_CASE("products saturate the bound exactly on the factor spans") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const int dim = seed % 2 ? 3 : 4;
    const Polytope p = generate(product_of_polygons(dim, seed));
    const Subspace factor1 = Subspace::coordinate(dim, {0, 1});
    const Subspace factor2 =
        dim == 3 ? Subspace::coordinate(3, {2}) : Subspace::coordinate(4, {2, 3});

    const auto report = check_scc(p);
    CHECK(report.pass);
    CHECK(report.equality_count == 2);
    for (const auto& row : report.rows) {
      const bool is_factor =
          row.space.distance(factor1) <= 1e-8 || row.space.distance(factor2) <= 1e-8;
      CHECK((row.status == SccStatus::Equality) == is_factor);
      if (is_factor) CHECK(row.witness_found);
    }

    const auto broken = check_scc(perturb_vertex(p, seed));
    CHECK(broken.pass);
    CHECK(broken.equality_count == 0);
  }
}

TEST_CASE("direct sum splits") {
  const Polytope prism = shapes::prism();
  const auto split = detect_direct_sum_split(prism, Subspace::coordinate(3, {2}));
  REQUIRE(split.has_value());
  CHECK(split->factor_in_l.size() == 2);      // the segment
  CHECK(split->factor_in_lperp.size() == 3);  // the triangle
  CHECK(split->complement.distance(Subspace::coordinate(3, {0, 1})) <= 1e-9);

  const auto square_split =
      detect_direct_sum_split(shapes::square(), Subspace::coordinate(2, {0}));
  REQUIRE(square_split.has_value());
  CHECK(square_split->factor_in_l.size() == 2);
  CHECK(square_split->factor_in_lperp.size() == 2);

  const Polytope tri = shapes::unit_triangle();
  const auto tri_mu = cone_volume_measure(tri);
  for (const auto& a : tri_mu.atoms())
    CHECK_FALSE(detect_direct_sum_split(tri, Subspace::from_spanning(2, {a.normal})));
}

TEST_CASE("parallelotope recognition") {
  CHECK(is_parallelotope(shapes::cube()));
  CHECK(is_parallelotope(shapes::square()));
  CHECK_FALSE(is_parallelotope(shapes::unit_triangle()));
  CHECK_FALSE(is_parallelotope(shapes::prism()));

  Matrix shear(3, 3);
  shear << 1, 0.7, -0.2, 0, 1, 0.5, 0, 0, 1;
  CHECK(is_parallelotope(apply_linear(shapes::cube(), shear)));

  GeneratorSpec cross;
  cross.name = "cross-polytope";
  cross.dim = 3;
  CHECK_FALSE(is_parallelotope(generate(cross)));
}
