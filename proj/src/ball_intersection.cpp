#include <algorithm>
#include <bit>
#include <optional>
#include <cmath>
#include <numbers>
#include <random>

#include "ballbody/body.hpp"
#include "ballbody/errors.hpp"

namespace ballbody {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

struct Sphere {
  Vec center;
  double radius2 = -1.0;  // negative: empty
};

// Circumcentre of the points in their affine hull.
Sphere circumsphere(const std::vector<const Vec*>& pts) {
  if (pts.empty()) return {};
  const Vec& p0 = *pts[0];
  if (pts.size() == 1) return {p0, 0.0};
  const std::size_t k = pts.size() - 1;
  Matrix gram(k, k);
  Vec rhs(k);
  std::vector<Vec> d;
  d.reserve(k);
  for (std::size_t i = 0; i < k; ++i) d.push_back(sub(*pts[i + 1], p0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram(i, j) = 2.0 * dot(d[i], d[j]);
    rhs[i] = dot(d[i], d[i]);
  }
  const Vec lambda = solve_linear(gram, rhs);
  Vec c = p0;
  for (std::size_t i = 0; i < k; ++i) c = axpy(c, lambda[i], d[i]);
  double r2 = 0.0;
  for (const Vec* p : pts) r2 = std::max(r2, dot(sub(*p, c), sub(*p, c)));
  return {c, r2};
}

Sphere welzl(const std::vector<Vec>& pts, std::size_t n, std::vector<const Vec*>& boundary, std::size_t dim) {
  if (n == 0 || boundary.size() == dim + 1) {
    try {
      return circumsphere(boundary);
    } catch (const NumericalDomainError&) {
      // Affinely dependent support set; drop the newest point.
      std::vector<const Vec*> reduced(boundary.begin(), boundary.end() - 1);
      return circumsphere(reduced);
    }
  }
  const Vec& p = pts[n - 1];
  Sphere s = welzl(pts, n - 1, boundary, dim);
  if (s.radius2 >= 0.0) {
    const Vec diff = sub(p, s.center);
    if (dot(diff, diff) <= s.radius2 + 1e-13) return s;
  }
  boundary.push_back(&p);
  s = welzl(pts, n - 1, boundary, dim);
  boundary.pop_back();
  return s;
}

Sphere min_enclosing_ball(std::vector<Vec> pts) {
  std::mt19937_64 rng(0x5eed);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<const Vec*> boundary;
  return welzl(pts, pts.size(), boundary, pts.front().size());
}

bool feasible(const std::vector<Vec>& centers, const Vec& y, double tol) {
  for (const Vec& c : centers)
    if (distance(y, c) > 1.0 + tol) return false;
  return true;
}

Vec project_to_ball(const Vec& z, const Vec& c) {
  const Vec d = sub(z, c);
  const double len = norm(d);
  if (len <= 1.0) return z;
  return axpy(c, 1.0 / len, d);
}

// Dykstra's alternating projections onto the intersection of unit balls.
Vec dykstra_project(const std::vector<Vec>& centers, const Vec& z) {
  if (feasible(centers, z, 0.0)) return z;
  // Single violated constraint whose projection is feasible.
  for (const Vec& c : centers) {
    if (distance(z, c) <= 1.0) continue;
    const Vec y = project_to_ball(z, c);
    if (feasible(centers, y, 1e-15)) return y;
  }
  const std::size_t m = centers.size();
  std::vector<Vec> corrections(m, Vec(z.size(), 0.0));
  Vec x = z;
  for (int sweep = 0; sweep < 500; ++sweep) {
    double change = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const Vec shifted = add(x, corrections[j]);
      const Vec y = project_to_ball(shifted, centers[j]);
      corrections[j] = sub(shifted, y);
      change = std::max(change, distance(x, y));
      x = y;
    }
    if (change < 1e-15) break;
  }
  return x;
}

// Maximiser of <y,u> over the sphere intersection of the chosen unit
// spheres (an (n-k)-sphere). Empty if the spheres do not meet or u is
// normal to the stratum.
std::optional<Vec> stratum_maximizer(const std::vector<Vec>& centers, const std::vector<std::size_t>& active,
                                     const Vec& u) {
  std::vector<const Vec*> pts;
  for (std::size_t j : active) pts.push_back(&centers[j]);
  Sphere s;
  try {
    s = circumsphere(pts);
  } catch (const NumericalDomainError&) {
    return std::nullopt;
  }
  if (s.radius2 >= 1.0) return std::nullopt;
  const double rho = std::sqrt(1.0 - s.radius2);
  // Orthonormal basis of the span of c_j - c_0, then strip u of it.
  std::vector<Vec> basis;
  for (std::size_t i = 1; i < active.size(); ++i) {
    Vec d = sub(centers[active[i]], centers[active[0]]);
    for (const Vec& b : basis) d = axpy(d, -dot(d, b), b);
    const double len = norm(d);
    if (len < 1e-12) return std::nullopt;
    basis.push_back(scale(d, 1.0 / len));
  }
  Vec pu = u;
  for (const Vec& b : basis) pu = axpy(pu, -dot(pu, b), b);
  const double len = norm(pu);
  if (len < 1e-14) return std::nullopt;
  return axpy(s.center, rho / len, pu);
}

}  // namespace

BallIntersectionShape::BallIntersectionShape(std::vector<Vec> centers) {
  if (centers.empty()) throw InvalidArgument("ball_intersection: no centers given");
  const std::size_t dim = centers.front().size();
  if (dim < 2) throw InvalidArgument("ball_intersection: dimension must be at least 2");
  for (const Vec& c : centers) {
    if (c.size() != dim) throw InvalidArgument("ball_intersection: centers have mixed dimensions");
    for (double x : c)
      if (!std::isfinite(x)) throw InvalidArgument("ball_intersection: non-finite center coordinate");
    bool duplicate = false;
    for (const Vec& kept : centers_)
      if (distance(kept, c) < 1e-14) duplicate = true;
    if (!duplicate) centers_.push_back(c);
  }

  const Sphere enclosing = min_enclosing_ball(centers_);
  chebyshev_center_ = enclosing.center;
  inradius_ = 1.0 - std::sqrt(std::max(0.0, enclosing.radius2));
  if (inradius_ < 1e-6)
    throw EmptyBodyError("ball_intersection: intersection contains no ball of radius 1e-6 (inradius " +
                         std::to_string(inradius_) + ")");

  if (dim != 2) return;
  const std::size_t m = centers_.size();
  for (std::size_t j = 0; j < m; ++j) {
    bool full = true;
    bool empty = false;
    double lo = 0.0;
    double hi = kTwoPi;
    for (std::size_t i = 0; i < m && !empty; ++i) {
      if (i == j) continue;
      const double dx = centers_[i][0] - centers_[j][0];
      const double dy = centers_[i][1] - centers_[j][1];
      const double d = std::hypot(dx, dy);
      // Points of circle j at normal angle phi lie in disc i iff
      // cos(phi - psi) >= d / 2.
      const double w = std::acos(std::min(1.0, d / 2.0));
      const double psi = std::atan2(dy, dx);
      if (full) {
        lo = psi - w;
        hi = psi + w;
        full = false;
        continue;
      }
      const double mid = 0.5 * (lo + hi);
      const double shifted = psi + kTwoPi * std::round((mid - psi) / kTwoPi);
      lo = std::max(lo, shifted - w);
      hi = std::min(hi, shifted + w);
      if (hi - lo <= 1e-12) empty = true;
    }
    if (empty) continue;
    arcs_.push_back({static_cast<int>(j), full ? 0.0 : wrap_angle(lo), full ? kTwoPi : hi - lo});
  }
  if (arcs_.empty()) throw EmptyBodyError("ball_intersection: empty intersection");
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
}

BallIntersectionShape::Location BallIntersectionShape::locate(double theta) const {
  const double t = wrap_angle(theta);
  auto it = std::upper_bound(arcs_.begin(), arcs_.end(), t, [](double v, const Arc& a) { return v < a.start; });
  const std::size_t idx = it == arcs_.begin() ? arcs_.size() - 1 : static_cast<std::size_t>(it - arcs_.begin()) - 1;
  const double offset = wrap_angle(t - arcs_[idx].start);
  const bool on_arc = arcs_[idx].length >= kTwoPi || offset <= arcs_[idx].length;
  return {idx, on_arc};
}

double BallIntersectionShape::arc_length() const {
  double s = 0.0;
  for (const Arc& a : arcs_) s += a.length;
  return s;
}

double BallIntersectionShape::exact_area() const {
  if (dim() != 2) throw UnsupportedBodyError("exact_area: planar ball polytopes only");
  // Green's theorem along each unit-circle arc.
  double twice = 0.0;
  for (const Arc& a : arcs_) {
    const Vec& c = centers_[a.disc];
    const double a0 = a.start;
    const double a1 = a.start + a.length;
    twice += c[0] * (std::sin(a1) - std::sin(a0)) - c[1] * (std::cos(a1) - std::cos(a0)) + a.length;
  }
  return 0.5 * twice;
}

Vec BallIntersectionShape::maximizer(const Vec& u) const {
  if (dim() == 2) {
    const Location loc = locate(std::atan2(u[1], u[0]));
    const Arc& arc = arcs_[loc.arc];
    const Vec& c = centers_[arc.disc];
    if (loc.on_arc) return {c[0] + u[0], c[1] + u[1]};
    const double end = arc.start + arc.length;
    return {c[0] + std::cos(end), c[1] + std::sin(end)};
  }
  // Face: the ball maximiser c_j + u is optimal whenever it is feasible.
  for (const Vec& c : centers_) {
    Vec y = add(c, u);
    if (feasible(centers_, y, 1e-12)) return y;
  }
  // The optimum is the maximiser over the sphere intersection of its active
  // set, so for few centres every feasible stratum candidate can be tried.
  const std::size_t m = centers_.size();
  const std::size_t n = static_cast<std::size_t>(dim());
  if (m <= 12) {
    std::optional<Vec> best;
    double best_value = -1e300;
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
      const auto k = static_cast<std::size_t>(std::popcount(mask));
      if (k < 2 || k > n) continue;
      std::vector<std::size_t> chosen;
      for (std::size_t b = 0; b < m; ++b)
        if (mask & (std::size_t{1} << b)) chosen.push_back(b);
      const auto cand = stratum_maximizer(centers_, chosen, u);
      if (!cand || !feasible(centers_, *cand, 1e-12)) continue;
      const double v = dot(*cand, u);
      if (v > best_value) {
        best_value = v;
        best = cand;
      }
    }
    if (best) return *best;
  }
  return maximizer_projected(u);
}

Vec BallIntersectionShape::maximizer_projected(const Vec& u) const {
  constexpr int kIterationCap = 10000;
  constexpr double kStep = 1.0;
  Vec y = chebyshev_center_;
  double change = 0.0;
  int it = 0;
  for (; it < kIterationCap; ++it) {
    const Vec next = dykstra_project(centers_, axpy(y, kStep, u));
    change = distance(next, y);
    y = next;
    if (change < 1e-13) break;
  }

  // Polish on the active set: the optimum is the maximiser of <y,u> over
  // the sphere intersection of its active constraints.
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < centers_.size(); ++j)
    if (distance(y, centers_[j]) > 1.0 - 1e-6) active.push_back(j);
  const std::size_t n = static_cast<std::size_t>(dim());
  std::optional<Vec> best;
  double best_value = -1e300;
  if (active.size() <= 16) {
    const std::size_t subsets = std::size_t{1} << active.size();
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      const int k = std::popcount(mask);
      if (k < 2 || static_cast<std::size_t>(k) > n) continue;
      std::vector<std::size_t> chosen;
      for (std::size_t b = 0; b < active.size(); ++b)
        if (mask & (std::size_t{1} << b)) chosen.push_back(active[b]);
      const auto cand = stratum_maximizer(centers_, chosen, u);
      if (!cand || !feasible(centers_, *cand, 1e-10)) continue;
      const double v = dot(*cand, u);
      if (v > best_value) {
        best_value = v;
        best = cand;
      }
    }
  }
  if (best && best_value >= dot(y, u) - 1e-7) return *best;
  if (change < 1e-9) return y;
  throw ConvergenceError("ball_intersection: projected gradient did not converge", change);
}

}  // namespace ballbody
