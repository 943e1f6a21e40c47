#include "ballbody/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ballbody/curvature.hpp"
#include "ballbody/errors.hpp"
#include "ballbody/parallel.hpp"
#include "ballbody/planar.hpp"

namespace ballbody {

double sphere_surface(int n) {
  if (n < 1) throw InvalidArgument("sphere_surface: n must be positive");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double unit_ball_volume(int n) { return sphere_surface(n) / n; }

namespace {

void check_ball_args(int n, double r, const char* what) {
  if (n < 2) throw InvalidArgument(std::string(what) + ": n must be at least 2");
  if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument(std::string(what) + ": radius must lie in [0, 1]");
}

void check_grid(const Body& body, const SphereGrid& grid) {
  if (grid.dim != body.dim()) throw InvalidArgument("functionals: grid dimension does not match body");
}

void reject_point(const Body& body, const char* what) {
  if (is_point(body)) throw UnsupportedBodyError(std::string(what) + ": not defined for a point");
}

// Ball polytope (or the dual / reflection of one) in the plane.
bool planar_ball_polytope(const Body& body) {
  if (body.dim() != 2) return false;
  const Shape& s = body.shape();
  if (std::holds_alternative<BallIntersectionShape>(s.v)) return true;
  if (const auto* c = std::get_if<CDualShape>(&s.v)) return planar_ball_polytope(c->inner);
  if (const auto* r = std::get_if<ReflectedShape>(&s.v)) return planar_ball_polytope(r->inner);
  return false;
}

struct NodeValues {
  double omega_c = 0.0;
  double omega = 0.0;
  double area = 0.0;
  double h = 0.0;
  double vol = 0.0;
  bool clamped = false;
  bool negative = false;
  bool smooth = true;
};

NodeValues evaluate_node(const Body& body, const Direction& u) {
  const int n = body.dim();
  const CurvatureSpectrum spec = principal_radii(body, u);
  const double p_c = 1.0 / (n + 1);
  const double p_r = static_cast<double>(n) / (n + 1);
  NodeValues v;
  v.smooth = spec.smooth;
  double oc = 1.0, om = 1.0, prod = 1.0;
  for (double r : spec.radii) {
    if (r < -1e-6 || r > 1.0 + 1e-6) v.clamped = true;
    // (1 - r)^{1/(n+1)} turns rounding noise at r = 1 into ~1e-5, so radii
    // within 1e-12 of an endpoint are taken to be on it.
    double c = std::clamp(r, 0.0, 1.0);
    if (c < 1e-12) c = 0.0;
    if (c > 1.0 - 1e-12) c = 1.0;
    oc *= std::pow(1.0 - c, p_c) * std::pow(c, p_r);
    om *= std::pow(c, p_r);
    prod *= r;
  }
  v.omega_c = oc;
  v.omega = om;
  v.area = prod;
  v.negative = prod < 0.0;
  v.h = support(body, u);
  v.vol = v.h * prod;
  return v;
}

}  // namespace

double omega_c_ball(int n, double r) {
  check_ball_args(n, r, "omega_c_ball");
  if (r == 0.0 || r == 1.0) return 0.0;
  return sphere_surface(n) * std::pow(1.0 - r, (n - 1.0) / (n + 1.0)) * std::pow(r, n * (n - 1.0) / (n + 1.0));
}

double omega_classical_ball(int n, double r) {
  check_ball_args(n, r, "omega_classical_ball");
  return sphere_surface(n) * std::pow(r, n * (n - 1.0) / (n + 1.0));
}

double surface_area_ball(int n, double r) {
  check_ball_args(n, r, "surface_area_ball");
  return sphere_surface(n) * std::pow(r, n - 1.0);
}

std::optional<double> structural_omega_c(const Body& body) {
  if (planar_ball_polytope(body)) return 0.0;
  return std::nullopt;
}

FunctionalReport compute_functionals(const Body& body, const SphereGrid& grid) {
  check_grid(body, grid);
  reject_point(body, "compute_functionals");
  const int n = body.dim();
  std::vector<NodeValues> nodes(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { nodes[i] = evaluate_node(body, grid.nodes[i]); });

  auto sum = [&](double NodeValues::*field) {
    std::vector<double> vals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = nodes[i].*field;
    return integrate_values(grid, vals);
  };
  const double wn = sphere_surface(n);
  FunctionalReport rep;
  rep.grid = grid.describe();
  rep.omega_c = wn * sum(&NodeValues::omega_c);
  rep.omega_classical = wn * sum(&NodeValues::omega);
  rep.surface_area = wn * sum(&NodeValues::area);
  rep.mean_width_half = sum(&NodeValues::h);
  rep.volume = wn / n * sum(&NodeValues::vol);
  for (const NodeValues& v : nodes) {
    rep.clamp_count += v.clamped;
    rep.negative_products += v.negative;
    rep.nonsmooth_nodes += !v.smooth;
  }

  if (n == 2 && contains_ball_intersection(body)) {
    const PlanarBoundary boundary(body);
    rep.surface_area = boundary.perimeter();
    rep.volume = boundary.area();
    rep.exact_planar = true;
  } else if (n == 3 && contains_ball_intersection(body, 3)) {
    rep.surface_area = projected_surface_area(body);
    rep.projected_surface = true;
  }
  rep.structural_omega_c = structural_omega_c(body);
  if (rep.structural_omega_c && std::abs(rep.omega_c - *rep.structural_omega_c) > 1e-4)
    throw SelfCheckError("compute_functionals: quadrature omega_c " + std::to_string(rep.omega_c) +
                         " disagrees with the boundary-structure value " + std::to_string(*rep.structural_omega_c));
  return rep;
}

double omega_c(const Body& body, const SphereGrid& grid) {
  reject_point(body, "omega_c");
  return compute_functionals(body, grid).omega_c;
}

double omega_classical(const Body& body, const SphereGrid& grid) {
  reject_point(body, "omega_classical");
  return compute_functionals(body, grid).omega_classical;
}

double surface_area(const Body& body, const SphereGrid& grid) {
  check_grid(body, grid);
  const double wn = sphere_surface(body.dim());
  return wn * integrate(grid, [&](const Direction& u) {
           const auto spec = principal_radii(body, u);
           double p = 1.0;
           for (double r : spec.radii) p *= r;
           return p;
         });
}

double projected_surface_area(const Body& body, int resolution, int circle_points) {
  if (body.dim() != 3) throw UnsupportedBodyError("projected_surface_area: three-dimensional bodies only");
  if (circle_points < 16) throw InvalidArgument("projected_surface_area: need at least 16 circle points");
  const SphereGrid grid = make_grid(3, resolution, GridScheme::ProductGaussTrapezoid3D);
  // Area of the projection onto u^perp is 1/2 of the integral of h^2 - h'^2
  // around the great circle, with h' = <x(e), e'> from the contact point.
  auto shadow = [&](const Direction& u) {
    const TangentFrame frame = tangent_frame(u);
    const Vec& a = frame.basis[0];
    const Vec& b = frame.basis[1];
    std::vector<double> terms(circle_points);
    for (int i = 0; i < circle_points; ++i) {
      const double t = 2.0 * std::numbers::pi * (i + 0.5) / circle_points;
      const Vec e = axpy(scale(a, std::cos(t)), std::sin(t), b);
      const Vec de = axpy(scale(a, -std::sin(t)), std::cos(t), b);
      const Vec x = contact_point(body, Direction::normalize(e)).point;
      const double h = dot(x, e);
      const double dh = dot(x, de);
      terms[i] = h * h - dh * dh;
    }
    return std::numbers::pi * pairwise_sum(terms) / circle_points;
  };
  // Cauchy: S = 4 times the mean shadow area.
  return 4.0 * integrate(grid, shadow);
}

double mean_width_half(const Body& body, const SphereGrid& grid) {
  check_grid(body, grid);
  return integrate(grid, [&](const Direction& u) { return support(body, u); });
}

double volume(const Body& body, const SphereGrid& grid) {
  check_grid(body, grid);
  if (planar_ball_polytope(body) || (body.dim() == 2 && contains_ball_intersection(body)))
    return PlanarBoundary(body).area();
  const int n = body.dim();
  return sphere_surface(n) / n * integrate(grid, [&](const Direction& u) {
           const auto spec = principal_radii(body, u);
           double p = support(body, u);
           for (double r : spec.radii) p *= r;
           return p;
         });
}

}  // namespace ballbody
