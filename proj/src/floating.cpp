#include "ballbody/floating.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ballbody/curvature.hpp"
#include "ballbody/errors.hpp"
#include "ballbody/parallel.hpp"
#include "ballbody/planar.hpp"

namespace ballbody {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_planar(const Body& body, const char* what) {
  if (body.dim() != 2) throw UnsupportedBodyError(std::string(what) + ": only planar bodies are supported");
}

double resolve_delta(const PlanarBoundary& boundary, double delta, const FloatingOptions& opts) {
  if (opts.directions < 64) throw InvalidArgument("floating: need at least 64 directions");
  const double abs_delta = opts.relative ? delta * boundary.area() : delta;
  if (!(abs_delta > 0.0 && abs_delta < boundary.area() / 4.0))
    throw InvalidArgument("floating: delta must lie in (0, Vol(K)/4)");
  return abs_delta;
}

// Root of cut(t) = delta on [0, 2]; cut is increasing in t.
double solve_offset(const std::function<double(double)>& cut, double delta, double theta, double& rel_error) {
  double lo = 0.0, hi = 2.0;
  const double flo = cut(lo) - delta;
  const double fhi = cut(hi) - delta;
  if (!(flo < 0.0 && fhi > 0.0)) {
    std::ostringstream os;
    os << "floating: cut volume does not bracket delta at direction angle " << theta << " (cut(0) - delta = " << flo
       << ", cut(2) - delta = " << fhi << ")";
    throw GeometryError(os.str());
  }
  // Illinois variant of regula falsi: keeps the bracket, superlinear on the
  // smooth cut curve, falls back to bisection when the bracket stays wide.
  double best_t = lo, best_err = -flo;
  double a = lo, fa = flo, b = hi, fb = fhi;
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    double mid = (a * fb - b * fa) / (fb - fa);
    if (!(mid > a && mid < b) || it % 8 == 7) mid = 0.5 * (a + b);
    const double f = cut(mid) - delta;
    if (std::abs(f) < best_err) {
      best_err = std::abs(f);
      best_t = mid;
    }
    if (std::abs(f) < delta * 1e-10 || b - a < 1e-15) break;
    if (f < 0.0) {
      a = mid;
      fa = f;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = mid;
      fb = f;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
  }
  rel_error = best_err / delta;
  if (rel_error > 1e-4) {
    std::ostringstream os;
    os << "floating: bisection stalled at direction angle " << theta << " (relative cut error " << rel_error << ")";
    throw GeometryError(os.str());
  }
  return best_t;
}

template <class Solve>
void solve_all(int m, FloatingResult& res, Solve&& solve) {
  res.offsets.assign(m, 0.0);
  std::vector<double> errors(m, 0.0);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t k) {
    const double theta = kTwoPi * static_cast<double>(k) / m;
    res.offsets[k] = solve(theta, errors[k]);
  });
  res.max_cut_error = *std::max_element(errors.begin(), errors.end());
  res.directions_used = m;
}

void finish(FloatingResult& res, const PlanarBoundary& boundary) {
  res.volume_body = boundary.area();
  res.volume_deficit = res.volume_body - res.volume_floating;
  res.ratio = res.volume_deficit / std::pow(res.delta, 2.0 / 3.0);
}

}  // namespace

double floating_constant(int n) {
  if (n < 2) throw InvalidArgument("floating_constant: n must be at least 2");
  const double v = std::pow(std::numbers::pi, 0.5 * (n - 1)) / std::tgamma(0.5 * (n + 1));
  return 0.5 * std::pow((n + 1) / v, 2.0 / (n + 1));
}

double cut_volume(const Body& body, const Vec& center) {
  require_planar(body, "cut_volume");
  return PlanarBoundary(body).cut_volume(center);
}

FloatingResult floating_body(const Body& body, double delta, const FloatingOptions& opts) {
  require_planar(body, "floating_body");
  const PlanarBoundary boundary(body);
  FloatingResult res;
  res.delta = resolve_delta(boundary, delta, opts);
  const int m = opts.directions;

  auto center = [&](double theta, double t) {
    const Vec x = boundary.point(theta);
    return Vec{x[0] - (1.0 + t) * std::cos(theta), x[1] - (1.0 + t) * std::sin(theta)};
  };
  solve_all(m, res, [&](double theta, double& err) {
    return solve_offset([&](double t) { return boundary.cut_volume(center(theta, t)); }, res.delta, theta, err);
  });

  std::vector<Vec> centers;
  centers.reserve(m);
  for (int k = 0; k < m; ++k) centers.push_back(center(kTwoPi * k / m, res.offsets[k]));
  res.body = Body::ball_intersection(std::move(centers));
  const auto& bi = std::get<BallIntersectionShape>(res.body->shape().v);
  res.volume_floating = bi.exact_area();

  for (int j = 0; j < 512 && res.contained; ++j) {
    const Vec p = contact_point(*res.body, Direction::from_angle(kTwoPi * (j + 0.5) / 512)).point;
    if (!contains(body, p, 1e-6)) res.contained = false;
  }
  finish(res, boundary);
  return res;
}

FloatingResult halfspace_floating_body(const Body& body, double delta, const FloatingOptions& opts) {
  require_planar(body, "halfspace_floating_body");
  const PlanarBoundary boundary(body);
  FloatingResult res;
  res.delta = resolve_delta(boundary, delta, opts);
  const int m = opts.directions;

  solve_all(m, res, [&](double theta, double& err) {
    const Vec u{std::cos(theta), std::sin(theta)};
    const double h = boundary.support(theta);
    return solve_offset([&](double t) { return boundary.cut_halfplane(u, h - t); }, res.delta, theta, err);
  });

  // Vertex k: lines k and k+1 meet.
  res.polygon.resize(m);
  for (int k = 0; k < m; ++k) {
    const int j = (k + 1) % m;
    const double ta = kTwoPi * k / m, tb = kTwoPi * j / m;
    const double sa = boundary.support(ta) - res.offsets[k];
    const double sb = boundary.support(tb) - res.offsets[j];
    const double det = std::sin(tb - ta);
    res.polygon[k] = {(sa * std::sin(tb) - sb * std::sin(ta)) / det, (sb * std::cos(ta) - sa * std::cos(tb)) / det};
  }
  double twice = 0.0;
  for (int k = 0; k < m; ++k) {
    const Vec& a = res.polygon[k];
    const Vec& b = res.polygon[(k + 1) % m];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  res.volume_floating = 0.5 * twice;
  for (const Vec& p : res.polygon)
    if (!contains(body, p, 1e-6)) res.contained = false;
  finish(res, boundary);
  return res;
}

LimitFit fit_limit(const std::vector<double>& deltas, const std::vector<double>& ratios) {
  if (deltas.size() != ratios.size()) throw InvalidArgument("fit_limit: size mismatch");
  if (deltas.size() < 2) throw InvalidArgument("fit_limit: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double x = std::cbrt(deltas[i]);
    sx += x;
    sy += ratios[i];
    sxx += x * x;
    sxy += x * ratios[i];
  }
  const double den = k * sxx - sx * sx;
  if (den == 0.0) throw NumericalDomainError("fit_limit: degenerate abscissae");
  LimitFit fit;
  fit.slope = (k * sxy - sx * sy) / den;
  fit.estimate = (sy - fit.slope * sx) / k;
  double ss = 0.0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double r = ratios[i] - fit.estimate - fit.slope * std::cbrt(deltas[i]);
    ss += r * r;
  }
  fit.fit_residual = std::sqrt(ss / k);
  return fit;
}

LimitFit limit_estimate(const Body& body, const std::vector<double>& deltas, const FloatingOptions& opts,
                        bool halfspace) {
  if (deltas.size() < 4) throw InvalidArgument("limit_estimate: need at least 4 deltas");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (!(deltas[i] < deltas[i - 1])) throw InvalidArgument("limit_estimate: deltas must be strictly decreasing");
  if (!(deltas.back() > 0.0) || deltas.front() / deltas.back() < 100.0 * (1.0 - 1e-12))
    throw InvalidArgument("limit_estimate: deltas must span at least two decades");
  std::vector<FloatingResult> sweep;
  std::vector<double> abs_deltas, ratios;
  for (double d : deltas) {
    sweep.push_back(halfspace ? halfspace_floating_body(body, d, opts) : floating_body(body, d, opts));
    abs_deltas.push_back(sweep.back().delta);
    ratios.push_back(sweep.back().ratio);
  }
  LimitFit fit = fit_limit(abs_deltas, ratios);
  fit.sweep = std::move(sweep);
  return fit;
}

bool floating_limit_applies(const Body& body) {
  if (body.dim() != 2 || contains_ball_intersection(body)) return false;
  const SphereGrid grid = make_grid(2, 4096, GridScheme::UniformAngle2D);
  for (const Direction& u : grid.nodes)
    if (principal_radii(body, u).radii.back() > 1.0 - 1e-3) return false;
  return true;
}

}  // namespace ballbody
