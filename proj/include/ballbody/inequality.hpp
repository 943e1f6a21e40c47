#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ballbody/body.hpp"
#include "ballbody/functionals.hpp"
#include "ballbody/sphere_quadrature.hpp"

namespace ballbody {

enum class InequalityKind {
  ExtremalMax,
  SantaloProduct,
  HolderLink,
  ProductVsSurface,
  IteratedSurface,
  SurfaceBallBound,
  Alexandrov,
  Isoperimetric,
  BmSurface,
  CurvatureDuality,
};

inline constexpr std::array<InequalityKind, 10> kAllInequalities{
    InequalityKind::ExtremalMax,      InequalityKind::SantaloProduct,  InequalityKind::HolderLink,
    InequalityKind::ProductVsSurface, InequalityKind::IteratedSurface, InequalityKind::SurfaceBallBound,
    InequalityKind::Alexandrov,       InequalityKind::Isoperimetric,   InequalityKind::BmSurface,
    InequalityKind::CurvatureDuality,
};

// Upper-case names, e.g. "SANTALO_PRODUCT".
std::string to_string(InequalityKind kind);
std::optional<InequalityKind> parse_inequality_kind(const std::string& name);
bool involves_dual(InequalityKind kind);

struct InequalityRecord {
  InequalityKind kind{};
  std::string body;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  double tol = 0.0;
  bool pass = false;
  bool near_equality = false;  // |slack| < 10 tol
  bool finite_difference = false;
  // ISOPERIMETRIC also checks Omega^c <= Omega; this is Omega - Omega^c.
  std::optional<double> inner_slack;
};

// Curvature of K or K^c comes from differenced contact points.
bool uses_finite_differences(InequalityKind kind, const Body& body);
// 1e-3 where curvature comes from differenced contact points, 1e-6 otherwise.
double default_tolerance(InequalityKind kind, const Body& body);

// Caches the functionals of K and K^c across kinds.
class InequalityEvaluator {
 public:
  InequalityEvaluator(Body body, SphereGrid grid);

  InequalityRecord verify(InequalityKind kind, std::optional<double> tol = std::nullopt);
  std::vector<InequalityRecord> verify_all(std::optional<double> tol = std::nullopt);

  const FunctionalReport& primal();
  const FunctionalReport& dual();
  // Max curvature duality residual over smooth grid nodes, and how many were
  // skipped.
  double duality_residual(int* skipped = nullptr);

 private:
  Body body_;
  SphereGrid grid_;
  std::optional<FunctionalReport> primal_;
  std::optional<FunctionalReport> dual_;
  std::optional<double> duality_;
  int duality_skipped_ = 0;
};

InequalityRecord verify(InequalityKind kind, const Body& body, const SphereGrid& grid,
                        std::optional<double> tol = std::nullopt);

struct SearchResult {
  std::string family;
  std::vector<double> params;  // ball: {r}; trig2d: {a, eps}
  double value = 0.0;
  int evaluations = 0;
  std::vector<std::string> rejected;  // steps leaving the membership region
};

// Golden-section search of omega_c over balls rB, r in [1e-6, 1 - 1e-6].
SearchResult extremal_search_ball(int n, const SphereGrid& grid);
// Nelder-Mead over Trig2D{a, [(2, eps)]} under 0 <= a -+ 3 eps <= 1.
SearchResult extremal_search_trig2d(const SphereGrid& grid);

struct ScanResult {
  double best_r = 0.5;
  double gain = 0.0;
  std::vector<double> radii;
  std::vector<double> values;  // g(r)
};

// g(r) = 1/2 (Omega^c(rB) + Omega^c((1-r)B)) - Omega^c(B/2) on a uniform scan.
ScanResult santalo_midpoint_scan(int n, double lo, double hi, int steps);

// f(r) = r^a (1-r)^b + r^b (1-r)^a, a = n(n-1)/(n+1), b = (n-1)/(n+1).
double midpoint_profile(int n, double r);
double midpoint_second_difference(int n, double h);
// Closed form f''(1/2) = (1/2)^{a+b-3} ((a-b)^2 - (a+b)).
double midpoint_second_derivative(int n);

}  // namespace ballbody
