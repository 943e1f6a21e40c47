#include <cmath>
#include <numbers>
#include <random>

#include "ballbody/errors.hpp"
#include "ballbody/linalg.hpp"
#include "ballbody/sphere_quadrature.hpp"
#include "doctest.h"

using namespace ballbody;

namespace {

double weight_sum(const SphereGrid& g) { return pairwise_sum(g.weights); }

double frame_residual(const TangentFrame& f) {
  double worst = 0.0;
  for (std::size_t i = 0; i < f.basis.size(); ++i) {
    worst = std::max(worst, std::abs(dot(f.basis[i], f.base.coords())));
    for (std::size_t j = 0; j < f.basis.size(); ++j)
      worst = std::max(worst, std::abs(dot(f.basis[i], f.basis[j]) - (i == j ? 1.0 : 0.0)));
  }
  return worst;
}

}  // namespace

TEST_CASE("uniform angle grid: m equally spaced angles, equal weights") {
  const SphereGrid g = make_grid(2, 8, GridScheme::UniformAngle2D);
  REQUIRE(g.size() == 8);
  for (int k = 0; k < 8; ++k) {
    const double theta = std::atan2(g.nodes[k][1], g.nodes[k][0]);
    // Nodes carry the fixed rotation offset.
    const double expected = 2 * std::numbers::pi * k / 8 + kGridRotationOffset;
    CHECK(std::remainder(theta - expected, 2 * std::numbers::pi) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(g.weights[k] == 1.0 / 8);
  }
}

TEST_CASE("product grid: N x 2N nodes, weights sum to one") {
  const SphereGrid g = make_grid(3, 16, GridScheme::ProductGaussTrapezoid3D);
  CHECK(g.size() == 16 * 32);
  CHECK(std::abs(weight_sum(g) - 1.0) < 1e-12);
  for (double w : g.weights) CHECK(w >= 0.0);
}

TEST_CASE("Monte Carlo grid is reproducible from its seed") {
  const SphereGrid a = make_grid(4, 10000, GridScheme::MonteCarlo, 42);
  const SphereGrid b = make_grid(4, 10000, GridScheme::MonteCarlo, 42);
  REQUIRE(a.size() == 10000);
  bool identical = true;
  for (std::size_t i = 0; i < a.size(); ++i) identical = identical && a.nodes[i].coords() == b.nodes[i].coords();
  CHECK(identical);
  for (const auto& u : a.nodes) CHECK(std::abs(norm(u.coords()) - 1.0) < 1e-12);
  const SphereGrid c = make_grid(4, 10000, GridScheme::MonteCarlo, 43);
  CHECK(c.nodes[0].coords() != a.nodes[0].coords());
}

TEST_CASE("make_grid rejects bad arguments") {
  CHECK_THROWS_AS(make_grid(1, 16, GridScheme::MonteCarlo, 1), InvalidArgument);
  CHECK_THROWS_AS(make_grid(2, 3, GridScheme::UniformAngle2D), InvalidArgument);
  CHECK_THROWS_AS(make_grid(4, 16, GridScheme::ProductGaussTrapezoid3D), InvalidArgument);
  CHECK_THROWS_AS(make_grid(3, 16, GridScheme::UniformAngle2D), InvalidArgument);
  CHECK_THROWS_AS(make_grid(4, 16, GridScheme::MonteCarlo), InvalidArgument);
}

TEST_CASE("weights sum to one and nodes are distinct on every scheme") {
  const std::vector<SphereGrid> grids{make_grid(2, 4, GridScheme::UniformAngle2D),
                                      make_grid(2, 4096, GridScheme::UniformAngle2D),
                                      make_grid(3, 4, GridScheme::ProductGaussTrapezoid3D),
                                      make_grid(3, 40, GridScheme::ProductGaussTrapezoid3D),
                                      make_grid(5, 777, GridScheme::MonteCarlo, 9)};
  for (const auto& g : grids) {
    CAPTURE(g.describe());
    CHECK(std::abs(weight_sum(g) - 1.0) < 1e-12);
    double closest = 1e9;
    const std::size_t m = std::min<std::size_t>(g.size(), 600);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) closest = std::min(closest, distance(g.nodes[i].coords(), g.nodes[j].coords()));
    CHECK(closest > 1e-9);
  }
}

TEST_CASE("integrate: constants, second moments, ball support") {
  for (const auto& g : {make_grid(2, 64, GridScheme::UniformAngle2D), make_grid(3, 12, GridScheme::ProductGaussTrapezoid3D)}) {
    CHECK(integrate(g, [](const Direction&) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integrate(g, [](const Direction& u) { return u[0] * u[0]; }) ==
          doctest::Approx(1.0 / g.dim).epsilon(1e-12));
    CHECK(integrate(g, [](const Direction&) { return 0.37; }) == doctest::Approx(0.37).epsilon(1e-14));
  }
}

TEST_CASE("Monte Carlo second moment within 5e-3 of 1/n") {
  for (int n = 2; n <= 5; ++n) {
    const SphereGrid g = make_grid(n, 100000, GridScheme::MonteCarlo, 2024 + n);
    const double m2 = integrate(g, [](const Direction& u) { return u[0] * u[0]; });
    CAPTURE(n);
    CHECK(std::abs(m2 - 1.0 / n) < 5e-3);
  }
}

TEST_CASE("uniform angle rule is exact on trigonometric polynomials of degree < m") {
  const int m = 64;
  const SphereGrid g = make_grid(2, m, GridScheme::UniformAngle2D);
  for (int k = 1; k < m; ++k) {
    const double c = integrate(g, [k](const Direction& u) { return std::cos(k * std::atan2(u[1], u[0])); });
    CHECK(std::abs(c) < 1e-12);
  }
  for (int k = 1; 2 * k < m; ++k) {
    const double c2 = integrate(g, [k](const Direction& u) { return std::pow(std::cos(k * std::atan2(u[1], u[0])), 2); });
    CHECK(std::abs(c2 - 0.5) < 1e-12);
  }
}

TEST_CASE("integrate reports the node of a non-finite value") {
  const SphereGrid g = make_grid(2, 16, GridScheme::UniformAngle2D);
  try {
    integrate(g, [](const Direction& u) { return u[0] > 0.99 ? std::nan("") : 1.0; });
    FAIL("expected NumericalDomainError");
  } catch (const NumericalDomainError& e) {
    CHECK(std::string(e.what()).find("node 0") != std::string::npos);
  }
}

TEST_CASE("Gauss-Legendre integrates polynomials up to degree 2N-1") {
  const GaussLegendreRule r = gauss_legendre(10);
  for (int p = 0; p <= 19; ++p) {
    double s = 0.0;
    for (int i = 0; i < 10; ++i) s += r.weights[i] * std::pow(r.nodes[i], p);
    const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("tangent frame examples") {
  const TangentFrame f3 = tangent_frame(Direction({0, 0, 1}));
  CHECK(f3.basis[0] == Vec{1, 0, 0});
  CHECK(f3.basis[1] == Vec{0, 1, 0});

  const TangentFrame f2 = tangent_frame(Direction({1, 0}));
  REQUIRE(f2.basis.size() == 1);
  CHECK(std::abs(f2.basis[0][0]) < 1e-15);
  CHECK(std::abs(std::abs(f2.basis[0][1]) - 1.0) < 1e-15);
  CHECK(tangent_frame(Direction({1, 0})).basis[0] == f2.basis[0]);
}

TEST_CASE("tangent frames are orthonormal and reproducible") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  for (int n = 2; n <= 6; ++n)
    for (int trial = 0; trial < 200; ++trial) {
      Vec v(n);
      for (double& x : v) x = gauss(rng);
      if (trial == 0) v = Vec(n, 0.0), v[n - 1] = -1.0;
      if (trial == 1) v = Vec(n, 0.0), v[n - 1] = 1.0, v[0] = 1e-9;
      const Direction u = Direction::normalize(v);
      const TangentFrame f = tangent_frame(u);
      REQUIRE(f.basis.size() == static_cast<std::size_t>(n - 1));
      CHECK(frame_residual(f) < 1e-12);
      const TangentFrame g = tangent_frame(u);
      for (int i = 0; i < n - 1; ++i) CHECK(g.basis[i] == f.basis[i]);
    }
}

TEST_CASE("Direction validates unit length") {
  CHECK_THROWS_AS(Direction({1.0, 1e-5}), InvalidArgument);
  CHECK_THROWS_AS(Direction::normalize({0.0, 0.0}), InvalidArgument);
  CHECK_NOTHROW(Direction({0.6, 0.8}));
}
