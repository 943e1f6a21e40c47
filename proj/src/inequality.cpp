#include "ballbody/inequality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "ballbody/curvature.hpp"
#include "ballbody/errors.hpp"
#include "ballbody/parallel.hpp"

namespace ballbody {

namespace {

struct KindName {
  InequalityKind kind;
  const char* name;
};

constexpr KindName kNames[] = {
    {InequalityKind::ExtremalMax, "EXTREMAL_MAX"},
    {InequalityKind::SantaloProduct, "SANTALO_PRODUCT"},
    {InequalityKind::HolderLink, "HOLDER_LINK"},
    {InequalityKind::ProductVsSurface, "PRODUCT_VS_SURFACE"},
    {InequalityKind::IteratedSurface, "ITERATED_SURFACE"},
    {InequalityKind::SurfaceBallBound, "SURFACE_BALL_BOUND"},
    {InequalityKind::Alexandrov, "ALEXANDROV"},
    {InequalityKind::Isoperimetric, "ISOPERIMETRIC"},
    {InequalityKind::BmSurface, "BM_SURFACE"},
    {InequalityKind::CurvatureDuality, "CURVATURE_DUALITY"},
};

// Structural value when known, quadrature otherwise.
double best_omega_c(const FunctionalReport& r) { return r.structural_omega_c.value_or(r.omega_c); }

}  // namespace

std::string to_string(InequalityKind kind) {
  for (const auto& k : kNames)
    if (k.kind == kind) return k.name;
  return "UNKNOWN";
}

std::optional<InequalityKind> parse_inequality_kind(const std::string& name) {
  std::string up = name;
  for (char& c : up) c = c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto& k : kNames)
    if (up == k.name) return k.kind;
  return std::nullopt;
}

bool involves_dual(InequalityKind kind) {
  switch (kind) {
    case InequalityKind::ExtremalMax:
    case InequalityKind::Alexandrov:
    case InequalityKind::Isoperimetric:
      return false;
    default:
      return true;
  }
}

bool uses_finite_differences(InequalityKind kind, const Body& body) {
  return contains_ball_intersection(body, 3) ||
         (kind == InequalityKind::CurvatureDuality && contains_ball_intersection(body));
}

double default_tolerance(InequalityKind kind, const Body& body) {
  return uses_finite_differences(kind, body) ? 1e-3 : 1e-6;
}

InequalityEvaluator::InequalityEvaluator(Body body, SphereGrid grid) : body_(std::move(body)), grid_(std::move(grid)) {
  if (grid_.dim != body_.dim()) throw InvalidArgument("verify: grid dimension does not match body");
}

const FunctionalReport& InequalityEvaluator::primal() {
  if (!primal_) primal_ = compute_functionals(body_, grid_);
  return *primal_;
}

const FunctionalReport& InequalityEvaluator::dual() {
  if (!dual_) dual_ = compute_functionals(c_dual(body_), grid_);
  return *dual_;
}

double InequalityEvaluator::duality_residual(int* skipped) {
  if (!duality_) {
    std::vector<double> values(grid_.size(), 0.0);
    std::vector<char> smooth(grid_.size(), 1);
    parallel_for(grid_.size(), [&](std::size_t i) {
      const DualityResidual r = curvature_duality_residual(body_, grid_.nodes[i]);
      values[i] = r.value;
      smooth[i] = r.smooth;
    });
    double worst = 0.0;
    duality_skipped_ = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!smooth[i]) {
        ++duality_skipped_;
        continue;
      }
      worst = std::max(worst, values[i]);
    }
    duality_ = worst;
  }
  if (skipped) *skipped = duality_skipped_;
  return *duality_;
}

InequalityRecord InequalityEvaluator::verify(InequalityKind kind, std::optional<double> tol) {
  if (is_point(body_)) throw UnsupportedBodyError(to_string(kind) + ": K is a point");
  if (involves_dual(kind) && is_unit_ball_translate(body_))
    throw UnsupportedBodyError(to_string(kind) + ": K is a translate of the unit ball, so K^c is a point");

  const int n = body_.dim();
  const double nd = n;
  InequalityRecord rec;
  rec.kind = kind;
  rec.body = describe(body_);
  rec.tol = tol.value_or(default_tolerance(kind, body_));
  rec.finite_difference = uses_finite_differences(kind, body_);

  switch (kind) {
    case InequalityKind::ExtremalMax:
      rec.lhs = best_omega_c(primal());
      rec.rhs = omega_c_ball(n, nd / (n + 1));
      break;
    case InequalityKind::SantaloProduct:
      rec.lhs = best_omega_c(primal()) * best_omega_c(dual());
      rec.rhs = std::pow(omega_c_ball(n, 0.5), 2);
      break;
    case InequalityKind::HolderLink:
      rec.lhs = best_omega_c(primal());
      rec.rhs = std::pow(primal().surface_area, (nd - 1) / nd) * std::pow(best_omega_c(dual()), 1.0 / nd);
      break;
    case InequalityKind::ProductVsSurface:
      rec.lhs = best_omega_c(primal()) * best_omega_c(dual());
      rec.rhs = primal().surface_area * dual().surface_area;
      break;
    case InequalityKind::IteratedSurface:
      rec.lhs = best_omega_c(primal());
      rec.rhs = std::pow(primal().surface_area, nd / (n + 1)) * std::pow(dual().surface_area, 1.0 / (n + 1));
      break;
    case InequalityKind::SurfaceBallBound:
      rec.lhs = std::pow(primal().surface_area, nd / (n + 1)) * std::pow(dual().surface_area, 1.0 / (n + 1));
      rec.rhs = std::pow(surface_area_ball(n, nd / (n + 1)), nd / (n + 1)) *
                std::pow(surface_area_ball(n, 1.0 / (n + 1)), 1.0 / (n + 1));
      break;
    case InequalityKind::Alexandrov:
      rec.lhs = std::pow(primal().surface_area / sphere_surface(n), 1.0 / (nd - 1));
      rec.rhs = primal().mean_width_half;
      break;
    case InequalityKind::Isoperimetric:
      rec.lhs = primal().omega_classical;
      rec.rhs = nd * std::pow(unit_ball_volume(n), 2.0 / (n + 1)) * std::pow(primal().volume, (nd - 1) / (n + 1));
      rec.inner_slack = primal().omega_classical - best_omega_c(primal());
      break;
    case InequalityKind::BmSurface: {
      // (1/2) K + (1/2)(-K^c), which is B/2 up to translation.
      const Body mid = minkowski({{0.5, body_}, {0.5, Body::reflected(c_dual(body_))}});
      const FunctionalReport mid_report = compute_functionals(mid, grid_);
      rec.lhs = std::sqrt(primal().surface_area * dual().surface_area);
      rec.rhs = mid_report.surface_area;
      break;
    }
    case InequalityKind::CurvatureDuality:
      rec.lhs = duality_residual();
      rec.rhs = 0.0;
      break;
  }
  rec.slack = rec.rhs - rec.lhs;
  if (!std::isfinite(rec.lhs) || !std::isfinite(rec.rhs))
    throw NumericalDomainError(to_string(kind) + ": non-finite side in inequality record");
  rec.pass = rec.slack >= -rec.tol && (!rec.inner_slack || *rec.inner_slack >= -rec.tol);
  rec.near_equality = std::abs(rec.slack) < 10.0 * rec.tol;
  return rec;
}

std::vector<InequalityRecord> InequalityEvaluator::verify_all(std::optional<double> tol) {
  std::vector<InequalityRecord> out;
  for (InequalityKind k : kAllInequalities) out.push_back(verify(k, tol));
  return out;
}

InequalityRecord verify(InequalityKind kind, const Body& body, const SphereGrid& grid, std::optional<double> tol) {
  return InequalityEvaluator(body, grid).verify(kind, tol);
}

SearchResult extremal_search_ball(int n, const SphereGrid& grid) {
  if (grid.dim != n) throw InvalidArgument("extremal_search: grid dimension does not match n");
  SearchResult res;
  res.family = "ball";
  auto f = [&](double r) {
    ++res.evaluations;
    return omega_c(Body::ball(Vec(n, 0.0), r), grid);
  };
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 1e-6, b = 1.0 - 1e-6;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-10) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    }
  }
  const double r = 0.5 * (a + b);
  res.params = {r};
  res.value = f(r);
  return res;
}

SearchResult extremal_search_trig2d(const SphereGrid& grid) {
  if (grid.dim != 2) throw InvalidArgument("extremal_search: Trig2D family is planar");
  SearchResult res;
  res.family = "trig2d";
  using P = std::array<double, 2>;
  auto admissible = [](const P& p) { return p[0] - 3.0 * std::abs(p[1]) >= 0.0 && p[0] + 3.0 * std::abs(p[1]) <= 1.0; };
  // Minimise -omega_c; inadmissible points are rejected with +inf.
  auto f = [&](const P& p) {
    if (!admissible(p)) {
      std::ostringstream os;
      os.precision(17);
      os << "rejected (a=" << p[0] << ", eps=" << p[1] << "): outside 0 <= a -+ 3|eps| <= 1";
      res.rejected.push_back(os.str());
      return std::numeric_limits<double>::infinity();
    }
    ++res.evaluations;
    return -omega_c(Body::trig2d(p[0], {{2, p[1]}}), grid);
  };

  std::array<P, 3> s{P{0.5, 0.02}, P{0.6, 0.02}, P{0.5, 0.06}};
  std::array<double, 3> v{f(s[0]), f(s[1]), f(s[2])};
  auto lerp = [](const P& a, const P& b, double t) { return P{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])}; };
  for (int it = 0; it < 2000; ++it) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return v[i] < v[j]; });
    const int best = idx[0], mid = idx[1], worst = idx[2];
    const double size = std::max(std::hypot(s[mid][0] - s[best][0], s[mid][1] - s[best][1]),
                                 std::hypot(s[worst][0] - s[best][0], s[worst][1] - s[best][1]));
    if (size < 1e-9) break;
    const P c = lerp(s[best], s[mid], 0.5);
    const P xr = lerp(c, s[worst], -1.0);
    const double fr = f(xr);
    if (fr < v[best]) {
      const P xe = lerp(c, s[worst], -2.0);
      const double fe = f(xe);
      if (fe < fr) {
        s[worst] = xe;
        v[worst] = fe;
      } else {
        s[worst] = xr;
        v[worst] = fr;
      }
      continue;
    }
    if (fr < v[mid]) {
      s[worst] = xr;
      v[worst] = fr;
      continue;
    }
    const P xc = fr < v[worst] ? lerp(c, s[worst], -0.5) : lerp(c, s[worst], 0.5);
    const double fc = f(xc);
    if (fc < std::min(fr, v[worst])) {
      s[worst] = xc;
      v[worst] = fc;
      continue;
    }
    // Shrink towards the best vertex.
    for (int i : {mid, worst}) {
      s[i] = lerp(s[best], s[i], 0.5);
      v[i] = f(s[i]);
    }
  }
  const int best = static_cast<int>(std::min_element(v.begin(), v.end()) - v.begin());
  res.params = {s[best][0], s[best][1]};
  res.value = -v[best];
  return res;
}

ScanResult santalo_midpoint_scan(int n, double lo, double hi, int steps) {
  if (n < 2) throw InvalidArgument("santalo_midpoint_scan: n must be at least 2");
  if (!(0.0 < lo && lo < hi && hi < 1.0)) throw InvalidArgument("santalo_midpoint_scan: window must lie inside (0, 1)");
  if (steps < 2) throw InvalidArgument("santalo_midpoint_scan: need at least two steps");
  ScanResult res;
  const double base = omega_c_ball(n, 0.5);
  res.gain = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < steps; ++i) {
    const double r = lo + (hi - lo) * i / (steps - 1);
    const double g = 0.5 * (omega_c_ball(n, r) + omega_c_ball(n, 1.0 - r)) - base;
    res.radii.push_back(r);
    res.values.push_back(g);
    if (g > res.gain) {
      res.gain = g;
      res.best_r = r;
    }
  }
  return res;
}

double midpoint_profile(int n, double r) {
  const double a = n * (n - 1.0) / (n + 1.0);
  const double b = (n - 1.0) / (n + 1.0);
  return std::pow(r, a) * std::pow(1.0 - r, b) + std::pow(r, b) * std::pow(1.0 - r, a);
}

double midpoint_second_difference(int n, double h) {
  return (midpoint_profile(n, 0.5 + h) - 2.0 * midpoint_profile(n, 0.5) + midpoint_profile(n, 0.5 - h)) / (h * h);
}

double midpoint_second_derivative(int n) {
  const double a = n * (n - 1.0) / (n + 1.0);
  const double b = (n - 1.0) / (n + 1.0);
  return std::pow(0.5, a + b - 3.0) * ((a - b) * (a - b) - (a + b));
}

}  // namespace ballbody
