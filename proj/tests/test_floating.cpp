#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "ballbody/body.hpp"
#include "ballbody/curvature.hpp"
#include "ballbody/errors.hpp"
#include "ballbody/floating.hpp"
#include "ballbody/functionals.hpp"
#include "corpus.hpp"
#include "doctest.h"

using namespace ballbody;

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<double> kSweep{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};

// Midpoint-rule area of {p in box : inside(p)} on a cells x cells grid.
double grid_area(const std::function<bool(double, double)>& inside, double half, int cells) {
  const double h = 2 * half / cells;
  long count = 0;
  for (int i = 0; i < cells; ++i)
    for (int j = 0; j < cells; ++j)
      if (inside(-half + (i + 0.5) * h, -half + (j + 0.5) * h)) ++count;
  return count * h * h;
}

// Inscribed boundary polygon of a planar body containing the origin, with
// an O(log N) membership test by angular search.
struct BoundaryPolygon {
  std::vector<Vec> v;
  std::vector<double> angle;

  BoundaryPolygon(const Body& body, int n) {
    for (int i = 0; i < n; ++i) {
      v.push_back(contact_point(body, Direction::from_angle(2 * kPi * i / n)).point);
      angle.push_back(std::atan2(v.back()[1], v.back()[0]));
    }
    // Rotate so angles increase from the smallest.
    const auto first = std::min_element(angle.begin(), angle.end()) - angle.begin();
    std::rotate(v.begin(), v.begin() + first, v.end());
    std::rotate(angle.begin(), angle.begin() + first, angle.end());
  }

  bool contains(double x, double y) const {
    const double a = std::atan2(y, x);
    std::size_t i = std::upper_bound(angle.begin(), angle.end(), a) - angle.begin();
    const Vec& p = v[(i + v.size() - 1) % v.size()];
    const Vec& q = v[i % v.size()];
    return (q[0] - p[0]) * (y - p[1]) - (q[1] - p[1]) * (x - p[0]) >= 0.0;
  }
};

}  // namespace

TEST_CASE("floating constants") {
  CHECK(floating_constant(2) == doctest::Approx(0.5 * std::pow(1.5, 2.0 / 3)).epsilon(1e-15));
  CHECK(floating_constant(2) == doctest::Approx(0.655185).epsilon(1e-6));
  CHECK(floating_constant(3) == doctest::Approx(0.5 * std::sqrt(4 / kPi)).epsilon(1e-15));
  CHECK(floating_constant(3) == doctest::Approx(0.564190).epsilon(1e-6));
  for (int n = 2; n <= 8; ++n) {
    const double vol = std::pow(kPi, (n - 1) / 2.0) / std::tgamma((n + 1) / 2.0);
    const double alt = 0.5 * std::pow(n + 1.0, 2.0 / (n + 1)) / std::pow(vol, 2.0 / (n + 1));
    CHECK(floating_constant(n) == doctest::Approx(alt).epsilon(1e-14));
  }
  CHECK(floating_constant(2) * kPi == doctest::Approx(2.058325).epsilon(1e-6));
  CHECK_THROWS_AS(floating_constant(1), InvalidArgument);
}

TEST_CASE("cut volume examples") {
  const Body half = Body::ball({0, 0}, 0.5);
  CHECK(cut_volume(half, {0, 0}) == doctest::Approx(0.0));
  CHECK(std::abs(cut_volume(half, {-1.5, 0}) - kPi / 4) < 1e-12);
  for (double d : {0.6, 0.8, 1.2, 1.4}) {
    const double expected = kPi / 4 - corpus::disc_overlap(0.5, 1.0, d);
    CHECK(std::abs(cut_volume(half, {-d, 0}) - expected) < 1e-7 * kPi / 4);
    CHECK(std::abs(cut_volume(half, {d * std::cos(1.0), d * std::sin(1.0)}) - expected) < 1e-7 * kPi / 4);
  }
  CHECK_THROWS_AS(cut_volume(Body::ball({0, 0, 0}, 0.5), {0, 0, 0}), UnsupportedBodyError);
}

TEST_CASE("cut volume against a grid oracle") {
  const Body lens = corpus::lens();
  const Vec c{0.4, 1.2};
  auto in_lens = [](double x, double y) {
    return std::hypot(x - 0.5, y) <= 1 && std::hypot(x + 0.5, y) <= 1;
  };
  auto in_disc = [&](double x, double y) { return std::hypot(x - c[0], y - c[1]) <= 1; };
  const double lens_cut = grid_area([&](double x, double y) { return in_lens(x, y) && !in_disc(x, y); }, 0.9, 3000);
  CHECK(std::abs(cut_volume(lens, c) - lens_cut) < 2e-4);

  const Body trig = corpus::trig(0);
  const BoundaryPolygon poly(trig, 20000);
  for (const Vec& center : {Vec{1.2, 0.3}, Vec{-0.4, -1.3}}) {
    auto in_center = [&](double x, double y) { return std::hypot(x - center[0], y - center[1]) <= 1; };
    const double oracle =
        grid_area([&](double x, double y) { return poly.contains(x, y) && !in_center(x, y); }, 0.6, 3000);
    CHECK(std::abs(cut_volume(trig, center) - oracle) < 2e-4);
  }
}

TEST_CASE("floating body of the half disc") {
  const Body half = Body::ball({0, 0}, 0.5);
  const FloatingResult r = floating_body(half, 1e-3);
  CHECK(r.volume_deficit > 0.0);
  CHECK(r.contained);
  CHECK(r.directions_used == 256);
  CHECK(r.max_cut_error < 1e-4);
  REQUIRE(r.body);
  CHECK(r.ratio >= 0.0);
}

TEST_CASE("floating body of a Trig2D body stays a ball body") {
  const FloatingResult r = floating_body(corpus::trig(0), 1e-3);
  REQUIRE(r.body);
  CHECK(r.contained);
  const SphereGrid g = make_grid(2, 4096, GridScheme::UniformAngle2D);
  CHECK(is_ball_body(*r.body, g, 1e-6));
}

TEST_CASE("ratio increases toward the limit once directions resolve the caps") {
  const Body half = Body::ball({0, 0}, 0.5);
  FloatingOptions opts;
  opts.directions = 1024;
  std::vector<double> ratios;
  for (double d : kSweep) ratios.push_back(floating_body(half, d, opts).ratio);
  for (std::size_t i = 1; i < ratios.size(); ++i) CHECK(ratios[i] > ratios[i - 1]);
  const double target = floating_constant(2) * omega_c_ball(2, 0.5);
  CHECK(ratios.back() < target);
  CHECK(ratios.back() > 0.99 * target);
}

TEST_CASE("limit fits") {
  const double c2 = floating_constant(2);
  SUBCASE("half disc") {
    const LimitFit fit = limit_estimate(Body::ball({0, 0}, 0.5), kSweep);
    const double target = c2 * kPi;
    CHECK(std::abs(fit.estimate - target) / target < 0.05);
    CHECK(fit.sweep.size() == kSweep.size());
  }
  SUBCASE("quarter disc") {
    const LimitFit fit = limit_estimate(Body::ball({0, 0}, 0.25), kSweep);
    const double target = c2 * 2 * kPi * std::cbrt(0.75) * std::pow(0.25, 2.0 / 3);
    CHECK(target == doctest::Approx(c2 * omega_c_ball(2, 0.25)).epsilon(1e-14));
    CHECK(std::abs(fit.estimate - target) / target < 0.05);
  }
  SUBCASE("trig") {
    const Body t = corpus::trig(0);
    const LimitFit fit = limit_estimate(t, kSweep);
    const double target = c2 * omega_c(t, make_grid(2, 4096, GridScheme::UniformAngle2D));
    CHECK(std::abs(fit.estimate - target) / target < 0.07);
  }
  SUBCASE("half-planes reproduce the classical limit") {
    const Body half = Body::ball({0, 0}, 0.5);
    const LimitFit fit = limit_estimate(half, kSweep, {}, true);
    const double target = c2 * 2 * kPi * std::pow(0.5, 2.0 / 3);
    CHECK(target == doctest::Approx(c2 * omega_classical_ball(2, 0.5)).epsilon(1e-14));
    CHECK(std::abs(fit.estimate - target) / target < 0.07);
  }
}

TEST_CASE("least-squares fit recovers an exact ansatz") {
  std::vector<double> ratios;
  for (double d : kSweep) ratios.push_back(2.0 - 0.7 * std::cbrt(d));
  const LimitFit fit = fit_limit(kSweep, ratios);
  CHECK(fit.estimate == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.slope == doctest::Approx(-0.7).epsilon(1e-12));
  CHECK(fit.fit_residual < 1e-12);
}

TEST_CASE("nested floating bodies, containment and convergence") {
  for (const Body& body : {Body::ball({0, 0}, 0.5), corpus::trig(0), corpus::trig(2)}) {
    CAPTURE(describe(body));
    FloatingOptions opts;
    const FloatingResult small = floating_body(body, 1e-4, opts);
    const FloatingResult large = floating_body(body, 1e-3, opts);
    CHECK(small.contained);
    CHECK(large.contained);
    for (int k = 0; k < opts.directions; ++k) {
      const Direction u = Direction::from_angle(2 * kPi * (k + 0.5) / opts.directions);
      CHECK(support(*small.body, u) >= support(*large.body, u) - 1e-8);
      CHECK(support(*small.body, u) <= support(body, u) + 1e-9);
    }
    CHECK(small.volume_deficit < large.volume_deficit);
    CHECK(small.volume_deficit >= -1e-9);
  }
}

TEST_CASE("direction count stability") {
  const Body half = Body::ball({0, 0}, 0.5);
  FloatingOptions a, b;
  a.directions = 256;
  b.directions = 512;
  const double ra = floating_body(half, 1e-3, a).ratio;
  const double rb = floating_body(half, 1e-3, b).ratio;
  CHECK(std::abs(ra - rb) / rb < 0.005);
}

TEST_CASE("relative delta") {
  const Body half = Body::ball({0, 0}, 0.5);
  FloatingOptions rel;
  rel.relative = true;
  const FloatingResult r = floating_body(half, 1e-3 / (kPi / 4), rel);
  CHECK(r.delta == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(r.ratio == doctest::Approx(floating_body(half, 1e-3).ratio).epsilon(1e-9));
}

TEST_CASE("floating errors") {
  const Body half = Body::ball({0, 0}, 0.5);
  CHECK_THROWS_AS(floating_body(half, 0.0), InvalidArgument);
  CHECK_THROWS_AS(floating_body(half, kPi / 16 + 1e-9), InvalidArgument);
  FloatingOptions few;
  few.directions = 32;
  CHECK_THROWS_AS(floating_body(half, 1e-3, few), InvalidArgument);
  CHECK_THROWS_AS(floating_body(Body::ball({0, 0, 0}, 0.5), 1e-3), UnsupportedBodyError);
  CHECK_THROWS_AS(limit_estimate(half, {1e-2, 1e-3, 1e-4}), InvalidArgument);
  CHECK_THROWS_AS(limit_estimate(half, {1e-2, 5e-3, 2e-3, 1e-3}), InvalidArgument);
  CHECK_THROWS_AS(limit_estimate(half, {1e-4, 1e-3, 1e-2, 3e-2}), InvalidArgument);
}

TEST_CASE("limit law applicability") {
  CHECK(floating_limit_applies(Body::ball({0, 0}, 0.5)));
  CHECK(floating_limit_applies(corpus::trig(0)));
  CHECK_FALSE(floating_limit_applies(corpus::lens()));
  CHECK_FALSE(floating_limit_applies(Body::ball({0, 0}, 0.9995)));
  // Sweep still runs on a ball polytope.
  const FloatingResult r = floating_body(corpus::lens(), 1e-3);
  CHECK(r.contained);
  CHECK(r.volume_deficit > 0.0);
}
