#pragma once

#include <optional>
#include <string>

#include "ballbody/body.hpp"
#include "ballbody/sphere_quadrature.hpp"

namespace ballbody {

// omega_n = Vol_{n-1}(S^{n-1}) = 2 pi^{n/2} / Gamma(n/2).
double sphere_surface(int n);
// Vol_n(B_2^n) = omega_n / n.
double unit_ball_volume(int n);

// Closed forms on rB_2^n. omega_c_ball throws InvalidArgument for r outside
// [0, 1]; r = 0 gives 0 by continuity.
double omega_c_ball(int n, double r);
double omega_classical_ball(int n, double r);
double surface_area_ball(int n, double r);

struct FunctionalReport {
  double omega_c = 0.0;
  double omega_classical = 0.0;
  double surface_area = 0.0;
  double mean_width_half = 0.0;
  double volume = 0.0;
  std::string grid;
  int clamp_count = 0;        // nodes with a radius outside [0,1] by more than 1e-6
  int negative_products = 0;  // nodes where prod r_i < 0
  int nonsmooth_nodes = 0;
  // Planar bodies carrying ball-polytope pieces: S and Vol taken from the
  // boundary structure instead of the sphere quadrature.
  bool exact_planar = false;
  // Three-dimensional bodies carrying ball-polytope pieces: prod r_i jumps
  // across edges, so S comes from projected_surface_area instead.
  bool projected_surface = false;
  // Value forced by the boundary structure (0 for planar ball polytopes and
  // their duals), if known. Quadrature is checked against it.
  std::optional<double> structural_omega_c;
};

// All five functionals from one pass over the grid. Throws
// UnsupportedBodyError for a point and SelfCheckError when the quadrature
// omega_c disagrees with the structural value by more than 1e-4.
FunctionalReport compute_functionals(const Body& body, const SphereGrid& grid);

double omega_c(const Body& body, const SphereGrid& grid);
double omega_classical(const Body& body, const SphereGrid& grid);
double surface_area(const Body& body, const SphereGrid& grid);  // pure quadrature, unclamped
double mean_width_half(const Body& body, const SphereGrid& grid);
// Cauchy's formula S = 4 E[Vol_2(K | u^perp)] in dimension 3, with each
// shadow area integrated from support data on a great circle. The
// integrand is continuous even where prod r_i is not.
double projected_surface_area(const Body& body, int resolution = 16, int circle_points = 256);
double volume(const Body& body, const SphereGrid& grid);  // exact arc-polygon value for planar ball polytopes

std::optional<double> structural_omega_c(const Body& body);

}  // namespace ballbody
