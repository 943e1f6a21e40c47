#include "ballbody/body.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "ballbody/errors.hpp"

namespace ballbody {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(const Vec& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw InvalidArgument(std::string(what) + ": non-finite coordinate");
}

}  // namespace

Body Body::ball(Vec center, double radius) {
  if (center.size() < 2) throw InvalidArgument("ball: dimension must be at least 2");
  require_finite(center, "ball");
  if (!std::isfinite(radius) || radius < 0.0) throw InvalidArgument("ball: radius must be finite and >= 0");
  const int dim = static_cast<int>(center.size());
  return Body(dim, std::make_shared<const Shape>(Shape{BallShape{std::move(center), radius}}));
}

Body Body::trig2d(double a, std::vector<Term> terms) {
  if (!std::isfinite(a)) throw InvalidArgument("trig2d: non-finite constant term");
  for (const Term& t : terms) {
    if (t.k < 2) throw InvalidArgument("trig2d: frequencies must be >= 2");
    if (!std::isfinite(t.eps)) throw InvalidArgument("trig2d: non-finite coefficient");
  }
  return Body(2, std::make_shared<const Shape>(Shape{Trig2DShape{a, std::move(terms)}}));
}

Body Body::ball_intersection(std::vector<Vec> centers) {
  BallIntersectionShape shape(std::move(centers));
  const int dim = shape.dim();
  return Body(dim, std::make_shared<const Shape>(Shape{std::move(shape)}));
}

Body Body::minkowski(std::vector<std::pair<double, Body>> parts) {
  if (parts.empty()) throw InvalidArgument("minkowski: no parts");
  double total = 0.0;
  const int dim = parts.front().second.dim();
  for (const auto& [w, b] : parts) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("minkowski: weights must be finite and >= 0");
    if (b.dim() != dim) throw InvalidArgument("minkowski: parts have mixed dimensions");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidArgument("minkowski: weights sum to " + std::to_string(total) + ", expected 1");
  return Body(dim, std::make_shared<const Shape>(Shape{MinkowskiShape{std::move(parts)}}));
}

Body Body::c_dual_of(Body inner) {
  const int dim = inner.dim();
  return Body(dim, std::make_shared<const Shape>(Shape{CDualShape{std::move(inner)}}));
}

Body Body::reflected(Body inner) {
  const int dim = inner.dim();
  return Body(dim, std::make_shared<const Shape>(Shape{ReflectedShape{std::move(inner)}}));
}

double Trig2DShape::h(double theta) const {
  double s = a;
  for (const auto& t : terms) s += t.eps * std::cos(t.k * theta);
  return s;
}

double Trig2DShape::dh(double theta) const {
  double s = 0.0;
  for (const auto& t : terms) s -= t.k * t.eps * std::sin(t.k * theta);
  return s;
}

double Trig2DShape::d2h(double theta) const {
  double s = 0.0;
  for (const auto& t : terms) s -= t.k * t.k * t.eps * std::cos(t.k * theta);
  return s;
}

double Trig2DShape::rho(double theta) const { return h(theta) + d2h(theta); }

namespace {

Vec gradient(const Body& body, const Vec& u);

double support_impl(const Body& body, const Vec& x, double len) {
  return std::visit(
      overloaded{
          [&](const BallShape& b) { return dot(b.center, x) + b.radius * len; },
          [&](const Trig2DShape& t) { return len * t.h(std::atan2(x[1], x[0])); },
          [&](const BallIntersectionShape& bi) { return dot(bi.maximizer(scale(x, 1.0 / len)), x); },
          [&](const MinkowskiShape& m) {
            double s = 0.0;
            for (const auto& [w, part] : m.parts)
              if (w != 0.0) s += w * support_impl(part, x, len);
            return s;
          },
          [&](const CDualShape& c) { return len - support_impl(c.inner, negate(x), len); },
          [&](const ReflectedShape& r) { return support_impl(r.inner, negate(x), len); },
      },
      body.shape().v);
}

Vec gradient(const Body& body, const Vec& u) {
  return std::visit(
      overloaded{
          [&](const BallShape& b) { return axpy(b.center, b.radius, u); },
          [&](const Trig2DShape& t) {
            const double theta = std::atan2(u[1], u[0]);
            const double h = t.h(theta);
            const double dh = t.dh(theta);
            return Vec{h * u[0] - dh * u[1], h * u[1] + dh * u[0]};
          },
          [&](const BallIntersectionShape& bi) { return bi.maximizer(u); },
          [&](const MinkowskiShape& m) {
            Vec g(u.size(), 0.0);
            for (const auto& [w, part] : m.parts)
              if (w != 0.0) g = axpy(g, w, gradient(part, u));
            return g;
          },
          // Differentiating h_K(x) + h_{K^c}(-x) = |x|.
          [&](const CDualShape& c) { return add(gradient(c.inner, negate(u)), u); },
          [&](const ReflectedShape& r) { return negate(gradient(r.inner, negate(u))); },
      },
      body.shape().v);
}

}  // namespace

double support(const Body& body, const Vec& x) {
  if (static_cast<int>(x.size()) != body.dim()) throw InvalidArgument("support: dimension mismatch");
  const double len = norm(x);
  if (!(len > 0.0)) throw InvalidArgument("support: direction must be non-zero");
  return support_impl(body, x, len);
}

double support(const Body& body, const Direction& u) { return support(body, u.coords()); }

ContactPoint contact_point(const Body& body, const Direction& u) {
  if (static_cast<int>(u.dim()) != body.dim()) throw InvalidArgument("contact_point: dimension mismatch");
  return {u, gradient(body, u.coords())};
}

Body c_dual(const Body& body) {
  if (const auto* b = std::get_if<BallShape>(&body.shape().v)) return Body::ball(b->center, std::max(0.0, 1.0 - b->radius));
  if (const auto* c = std::get_if<CDualShape>(&body.shape().v)) return c->inner;
  return Body::c_dual_of(body);
}

Body c_dual_explicit(const Body& body) {
  return std::visit(
      overloaded{
          [&](const BallShape& b) { return Body::ball(b.center, std::max(0.0, 1.0 - b.radius)); },
          [&](const Trig2DShape& t) {
            // 1 - h(theta + pi): cos(k(theta + pi)) = (-1)^k cos(k theta).
            std::vector<Body::Term> terms;
            for (const auto& term : t.terms) terms.push_back({term.k, term.k % 2 == 0 ? -term.eps : term.eps});
            return Body::trig2d(1.0 - t.a, std::move(terms));
          },
          [&](const BallIntersectionShape&) { return Body::c_dual_of(body); },
          [&](const MinkowskiShape& m) {
            std::vector<std::pair<double, Body>> parts;
            for (const auto& [w, part] : m.parts) parts.emplace_back(w, c_dual_explicit(part));
            return Body::minkowski(std::move(parts));
          },
          [&](const CDualShape& c) { return c.inner; },
          [&](const ReflectedShape& r) { return Body::reflected(c_dual_explicit(r.inner)); },
      },
      body.shape().v);
}

Body minkowski(std::vector<std::pair<double, Body>> parts) { return Body::minkowski(std::move(parts)); }

namespace {

const SphereGrid& containment_grid(int dim) {
  static std::mutex mutex;
  static std::array<std::unique_ptr<SphereGrid>, 16> cache;
  if (dim < 2 || dim >= static_cast<int>(cache.size())) throw InvalidArgument("contains: unsupported dimension");
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[dim];
  if (!slot) {
    if (dim == 2)
      slot = std::make_unique<SphereGrid>(make_grid(2, 2048, GridScheme::UniformAngle2D));
    else if (dim == 3)
      slot = std::make_unique<SphereGrid>(make_grid(3, 32, GridScheme::ProductGaussTrapezoid3D));
    else
      slot = std::make_unique<SphereGrid>(make_grid(dim, 2048, GridScheme::MonteCarlo, 2048));
  }
  return *slot;
}

}  // namespace

bool contains(const Body& body, const Vec& p, double tol) {
  if (static_cast<int>(p.size()) != body.dim()) throw InvalidArgument("contains: dimension mismatch");
  if (const auto* b = std::get_if<BallShape>(&body.shape().v)) return distance(p, b->center) <= b->radius + tol;
  if (const auto* bi = std::get_if<BallIntersectionShape>(&body.shape().v)) {
    for (const Vec& c : bi->centers())
      if (distance(p, c) > 1.0 + tol) return false;
    return true;
  }
  for (const Direction& u : containment_grid(body.dim()).nodes)
    if (dot(p, u.coords()) > support(body, u) + tol) return false;
  return true;
}

bool is_point(const Body& body) {
  return std::visit(overloaded{
                        [](const BallShape& b) { return b.radius <= 1e-12; },
                        [](const Trig2DShape& t) {
                          if (std::abs(t.a) > 1e-12) return false;
                          for (const auto& term : t.terms)
                            if (std::abs(term.eps) > 1e-12) return false;
                          return true;
                        },
                        [](const BallIntersectionShape&) { return false; },
                        [](const MinkowskiShape& m) {
                          for (const auto& [w, part] : m.parts)
                            if (w > 0.0 && !is_point(part)) return false;
                          return true;
                        },
                        [](const CDualShape& c) { return is_unit_ball_translate(c.inner); },
                        [](const ReflectedShape& r) { return is_point(r.inner); },
                    },
                    body.shape().v);
}

bool is_unit_ball_translate(const Body& body) {
  return std::visit(overloaded{
                        [](const BallShape& b) { return std::abs(b.radius - 1.0) <= 1e-12; },
                        [](const Trig2DShape& t) {
                          if (std::abs(t.a - 1.0) > 1e-12) return false;
                          for (const auto& term : t.terms)
                            if (std::abs(term.eps) > 1e-12) return false;
                          return true;
                        },
                        [](const BallIntersectionShape& bi) { return bi.centers().size() == 1; },
                        [](const MinkowskiShape& m) {
                          for (const auto& [w, part] : m.parts)
                            if (w > 0.0 && !is_unit_ball_translate(part)) return false;
                          return true;
                        },
                        [](const CDualShape& c) { return is_point(c.inner); },
                        [](const ReflectedShape& r) { return is_unit_ball_translate(r.inner); },
                    },
                    body.shape().v);
}

bool contains_ball_intersection(const Body& body, int min_dim) {
  return std::visit(overloaded{
                        [](const BallShape&) { return false; },
                        [](const Trig2DShape&) { return false; },
                        [&](const BallIntersectionShape& bi) { return bi.dim() >= min_dim; },
                        [&](const MinkowskiShape& m) {
                          for (const auto& [w, part] : m.parts)
                            if (contains_ball_intersection(part, min_dim)) return true;
                          return false;
                        },
                        [&](const CDualShape& c) { return contains_ball_intersection(c.inner, min_dim); },
                        [&](const ReflectedShape& r) { return contains_ball_intersection(r.inner, min_dim); },
                    },
                    body.shape().v);
}

std::vector<std::string> invariant_violations(const Body& body) {
  std::vector<std::string> out;
  std::visit(overloaded{
                 [&](const BallShape& b) {
                   if (b.radius > 1.0)
                     out.push_back("ball radius " + std::to_string(b.radius) + " exceeds 1 (not a summand of the unit ball)");
                 },
                 [&](const Trig2DShape& t) {
                   double lo = 1e300;
                   double hi = -1e300;
                   for (int i = 0; i < 4096; ++i) {
                     const double r = t.rho(2.0 * std::numbers::pi * i / 4096);
                     lo = std::min(lo, r);
                     hi = std::max(hi, r);
                   }
                   if (lo < -1e-12 || hi > 1.0 + 1e-12) {
                     std::ostringstream os;
                     os << "trig2d curvature radius ranges over [" << lo << ", " << hi << "], outside [0, 1]";
                     out.push_back(os.str());
                   }
                 },
                 [&](const BallIntersectionShape&) {},
                 [&](const MinkowskiShape& m) {
                   for (const auto& [w, part] : m.parts)
                     for (auto& v : invariant_violations(part)) out.push_back("minkowski part: " + v);
                 },
                 [&](const CDualShape& c) {
                   if (is_point(c.inner)) out.push_back("c_dual of a single point");
                   for (auto& v : invariant_violations(c.inner)) out.push_back("c_dual inner: " + v);
                 },
                 [&](const ReflectedShape& r) {
                   for (auto& v : invariant_violations(r.inner)) out.push_back("reflected inner: " + v);
                 },
             },
             body.shape().v);
  return out;
}

namespace {

void print_vec(std::ostream& os, const Vec& v) {
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
}

}  // namespace

std::string describe(const Body& body) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const BallShape& b) {
                   os << "ball(center=";
                   print_vec(os, b.center);
                   os << ", r=" << b.radius << ")";
                 },
                 [&](const Trig2DShape& t) {
                   os << "trig2d(a=" << t.a;
                   for (const auto& term : t.terms) os << ", " << term.eps << "*cos(" << term.k << "t)";
                   os << ")";
                 },
                 [&](const BallIntersectionShape& bi) {
                   os << "ball_intersection(dim=" << bi.dim() << ", centers=" << bi.centers().size() << ")";
                 },
                 [&](const MinkowskiShape& m) {
                   os << "minkowski(";
                   for (std::size_t i = 0; i < m.parts.size(); ++i)
                     os << (i ? " + " : "") << m.parts[i].first << "*" << describe(m.parts[i].second);
                   os << ")";
                 },
                 [&](const CDualShape& c) { os << "c_dual(" << describe(c.inner) << ")"; },
                 [&](const ReflectedShape& r) { os << "reflect(" << describe(r.inner) << ")"; },
             },
             body.shape().v);
  return os.str();
}

}  // namespace ballbody
