#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ballbody/body.hpp"
#include "ballbody/linalg.hpp"
#include "ballbody/sphere_quadrature.hpp"

namespace ballbody {

enum class HessianMethod {
  Auto,              // closed forms where the representation allows, else differences
  FiniteDifference,  // always difference the contact points
};

inline constexpr double kDefaultHessianStep = 1e-4;

struct Hessian {
  Matrix matrix;  // n x n, symmetric, annihilates the base direction
  double asymmetry = 0.0;
  bool finite_difference = false;
  // False when the difference stencil straddles a change of boundary
  // stratum (one-sided stencils disagree); values there are unreliable.
  bool smooth = true;
};

// Hessian of the 1-homogeneous support function at a unit direction.
// Throws InvalidArgument for a step outside [1e-6, 1e-2].
Hessian hessian_homogeneous(const Body& body, const Direction& u, double step = kDefaultHessianStep,
                            HessianMethod method = HessianMethod::Auto);

struct CurvatureSpectrum {
  Direction direction;
  std::vector<double> radii;  // ascending, n - 1 values, never clamped
  double hessian_residual = 0.0;
  Vec contact;
  bool smooth = true;
  bool finite_difference = false;
};

CurvatureSpectrum principal_radii(const Body& body, const Direction& u, HessianMethod method = HessianMethod::Auto,
                                  double step = kDefaultHessianStep);

struct DualityResidual {
  double value = 0.0;  // max_i |r_i(u) + s_{n-i}(-u) - 1|
  bool smooth = true;
  std::vector<double> primal;
  std::vector<double> dual;
};

// Radii of K at u against radii of K^c at -u. The dual side is computed from
// c_dual_explicit(K) on its own (differences of its contact points whenever
// a ball polytope is involved), never from the Hessian identity. Points and
// translates of the unit ball are rejected.
DualityResidual curvature_duality_residual(const Body& body, const Direction& u);

struct MembershipCheck {
  bool member = true;
  std::optional<CurvatureSpectrum> failure;  // first offending node
  std::vector<std::string> invariant_violations;
};

// Sampled necessary condition for K in S_n: every principal radius at every
// grid node lies in [-tol, 1 + tol], and the representation invariants hold.
// Nodes whose difference stencil straddles a kink are skipped.
MembershipCheck ball_body_check(const Body& body, const SphereGrid& grid, double tol);
bool is_ball_body(const Body& body, const SphereGrid& grid, double tol);

}  // namespace ballbody
