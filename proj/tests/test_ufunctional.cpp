#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "conevol/generators.hpp"
#include "conevol/rng.hpp"
#include "conevol/ufunctional.hpp"
#include "oracles.hpp"
#include "shapes.hpp"

using namespace conevol;
using shapes::vec2;
using Catch::Approx;

namespace {

double ordered_oracle(const ConeVolumeMeasure& mu, int k) {
  std::vector<Vector> normals;
  std::vector<double> weights;
  for (const auto& a : mu.atoms()) {
    normals.push_back(a.normal);
    weights.push_back(a.weight);
  }
  return oracles::ordered_tuple_sigma_power(normals, weights, k);
}

}  // namespace

TEST_CASE("sigma_1 is the total mass") {
  for (int i = 0; i < 12; ++i) {
    const Polytope p = generate(suite_spec(i, 777, {2, 3, 4}));
    const auto mu = cone_volume_measure(p);
    CHECK(sigma_k(mu, 1) == Approx(p.volume()).epsilon(1e-12));
  }
}

TEST_CASE("square: sigma_2 and the sharp bound coincide") {
  const auto mu = cone_volume_measure(shapes::square());
  CHECK(sigma_k(mu, 2) == Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
  const auto report = check_u_inequality(shapes::square());
  CHECK(report.u == Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(report.bound == Approx(std::sqrt(2.0) / 2.0 * 4.0).epsilon(1e-13));
  CHECK(report.equality);
  CHECK(report.parallelotope);
  CHECK(report.equality_matches_parallelotope);
}

TEST_CASE("centered triangle: strict inequality with ratio 2/sqrt(3)") {
  const auto mu = cone_volume_measure(shapes::unit_triangle());
  CHECK(sigma_k(mu, 2) * sigma_k(mu, 2) == Approx(9.0 / 8.0).epsilon(1e-13));
  CHECK(u_functional(mu) == Approx(std::sqrt(9.0 / 8.0)).epsilon(1e-13));

  const auto report = check_u_inequality(shapes::unit_triangle());
  CHECK(report.u == Approx(1.0606601717798212).epsilon(1e-12));
  CHECK(report.bound == Approx(0.9185586535436918).epsilon(1e-12));
  CHECK(report.ratio == Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK_FALSE(report.equality);
  CHECK_FALSE(report.parallelotope);
}

TEST_CASE("cube: U matches the frozen value and saturates the bound") {
  const auto mu = cone_volume_measure(shapes::cube());
  CHECK(sigma_k(mu, 2) * sigma_k(mu, 2) == Approx(128.0 / 3.0).epsilon(1e-13));
  const double u = u_functional(mu);
  CHECK(u * u * u == Approx(1024.0 / 9.0).epsilon(1e-13));

  const auto report = check_u_inequality(shapes::cube());
  CHECK(report.ratio == Approx(1.0).margin(1e-13));
  CHECK(report.equality);
  CHECK(report.parallelotope);
}

TEST_CASE("recursion margins of the model bodies") {
  const auto square_margins = check_recursion(shapes::square());
  REQUIRE(square_margins.size() == 1);
  CHECK(square_margins[0].lhs == Approx(8.0).epsilon(1e-13));
  CHECK(square_margins[0].rhs == Approx(8.0).epsilon(1e-13));

  const auto cube_margins = check_recursion(shapes::cube());
  REQUIRE(cube_margins.size() == 2);
  CHECK(cube_margins[1].lhs == Approx(1024.0 / 9.0).epsilon(1e-12));
  CHECK(cube_margins[1].rhs == Approx(1024.0 / 9.0).epsilon(1e-12));
  CHECK(std::abs(cube_margins[1].margin) <= 1e-9 * std::pow(8.0, 3));

  const auto tri_margins = check_recursion(shapes::unit_triangle());
  REQUIRE(tri_margins.size() == 1);
  CHECK(tri_margins[0].lhs == Approx(9.0 / 8.0).epsilon(1e-12));
  CHECK(tri_margins[0].rhs ==
        Approx(0.5 * std::pow(3.0 * std::sqrt(3.0) / 4.0, 2)).epsilon(1e-12));
  CHECK(tri_margins[0].margin > 0.0);
}

TEST_CASE("subset formula equals the ordered-tuple oracle") {
  for (int i = 0; i < 16; ++i) {
    const Polytope p = generate(suite_spec(i, 1001, {2, 3}));
    const auto mu = cone_volume_measure(p);
    if (mu.size() > 10) continue;
    for (int k = 1; k <= mu.dim(); ++k) {
      const double subset_power = std::pow(sigma_k(mu, k), k);
      CHECK(subset_power == Approx(ordered_oracle(mu, k)).epsilon(1e-12));
    }
  }
}

TEST_CASE("U is centro-affine invariant") {
  Rng rng(2024);
  for (int i = 0; i < 12; ++i) {
    const Polytope p = generate(suite_spec(i, 6006, {2, 3}));
    const int n = p.dim();
    Matrix t(n, n);
    double det = 0.0;
    do {
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) t(r, c) = rng.gaussian();
      det = t.determinant();
    } while (std::abs(det) < 0.3);
    t /= std::pow(std::abs(det), 1.0 / n);
    const double u0 = u_functional(cone_volume_measure(p));
    const double u1 = u_functional(cone_volume_measure(center_at_centroid(apply_linear(p, t))));
    CHECK(u1 == Approx(u0).epsilon(1e-8));
  }
}

TEST_CASE("random centered polytopes respect both U bounds") {
  for (int i = 0; i < 30; ++i) {
    const Polytope p = generate(suite_spec(i, 880088, {2, 3, 4}));
    const auto report = check_u_inequality(p);
    CHECK(report.ratio >= 1.0 - 1e-9);
    CHECK(report.u <= report.volume * (1.0 + 1e-9));
    CHECK(report.equality_matches_parallelotope);
    for (const auto& m : report.margins)
      CHECK(m.margin >= -1e-9 * std::pow(report.volume, m.k + 1));
  }
}

TEST_CASE("parallelotopes sit exactly on the bound") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::Parallelotope;
    spec.dim = 2 + static_cast<int>(seed % 3);
    spec.seed = seed;
    const auto report = check_u_inequality(generate(spec));
    CHECK(report.parallelotope);
    CHECK(std::abs(report.ratio - 1.0) <= 1e-9);
    for (const auto& m : report.margins)
      CHECK(std::abs(m.margin) <= 1e-9 * std::pow(report.volume, m.k + 1));
  }
}

TEST_CASE("degenerate inputs raise the right errors") {
  const ConeVolumeMeasure flat(3, {{shapes::vec3(1, 0, 0), 1.0},
                                   {shapes::vec3(-1, 0, 0), 1.0},
                                   {shapes::vec3(0, 1, 0), 1.0}});
  CHECK_THROWS_AS(u_functional(flat), DegenerateNormals);
  CHECK_THROWS_AS(sigma_k(flat, 0), InvalidK);
  CHECK_THROWS_AS(sigma_k(flat, 4), InvalidK);
  CHECK_THROWS_AS(check_u_inequality(shapes::shifted_triangle()), NotCentered);
}
