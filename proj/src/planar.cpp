#include "ballbody/planar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ballbody/curvature.hpp"
#include "ballbody/errors.hpp"

namespace ballbody {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kSamples = 4096;
constexpr int kPanelPoints = 16;
constexpr double kMaxPanel = std::numbers::pi / 32.0;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double wrap(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

void require_planar(const Body& body, const char* what) {
  if (body.dim() != 2) throw UnsupportedBodyError(std::string(what) + ": planar bodies only");
}

const GaussLegendreRule& panel_rule() {
  static const GaussLegendreRule rule = gauss_legendre(kPanelPoints);
  return rule;
}

double cross(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

}  // namespace

double planar_perimeter(const Body& body) {
  require_planar(body, "planar_perimeter");
  return std::visit(overloaded{
                        [](const BallShape& b) { return kTwoPi * b.radius; },
                        [](const Trig2DShape& t) { return kTwoPi * t.a; },
                        [](const BallIntersectionShape& bi) { return bi.arc_length(); },
                        [](const MinkowskiShape& m) {
                          double s = 0.0;
                          for (const auto& [w, part] : m.parts) s += w * planar_perimeter(part);
                          return s;
                        },
                        // rho_{K^c}(theta) = 1 - rho_K(theta + pi)
                        [](const CDualShape& c) { return kTwoPi - planar_perimeter(c.inner); },
                        [](const ReflectedShape& r) { return planar_perimeter(r.inner); },
                    },
                    body.shape().v);
}

std::vector<double> planar_breaks(const Body& body) {
  require_planar(body, "planar_breaks");
  std::vector<double> out = std::visit(
      overloaded{
          [](const BallShape&) { return std::vector<double>{}; },
          [](const Trig2DShape&) { return std::vector<double>{}; },
          [](const BallIntersectionShape& bi) {
            std::vector<double> b;
            for (const Arc& a : bi.arcs()) {
              if (a.length >= kTwoPi) continue;
              b.push_back(wrap(a.start));
              b.push_back(wrap(a.start + a.length));
            }
            return b;
          },
          [](const MinkowskiShape& m) {
            std::vector<double> b;
            for (const auto& [w, part] : m.parts) {
              if (w == 0.0) continue;
              const auto sub = planar_breaks(part);
              b.insert(b.end(), sub.begin(), sub.end());
            }
            return b;
          },
          [](const CDualShape& c) {
            auto b = planar_breaks(c.inner);
            for (double& t : b) t = wrap(t + std::numbers::pi);
            return b;
          },
          [](const ReflectedShape& r) {
            auto b = planar_breaks(r.inner);
            for (double& t : b) t = wrap(t + std::numbers::pi);
            return b;
          },
      },
      body.shape().v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return b - a < 1e-14; }), out.end());
  return out;
}

PlanarBoundary::PlanarBoundary(Body body) : body_(std::move(body)) {
  require_planar(body_, "PlanarBoundary");
  breaks_ = planar_breaks(body_);
  sample_theta_.resize(kSamples);
  samples_.resize(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    sample_theta_[i] = kTwoPi * i / kSamples;
    samples_[i] = point(sample_theta_[i]);
  }
  area_ = 0.5 * swept(0.0, kTwoPi);
}

Vec PlanarBoundary::point(double theta) const { return contact_point(body_, Direction::from_angle(theta)).point; }

double PlanarBoundary::support(double theta) const { return ballbody::support(body_, Direction::from_angle(theta)); }

double PlanarBoundary::radius(double theta) const {
  return principal_radii(body_, Direction::from_angle(theta)).radii.front();
}

double PlanarBoundary::perimeter() const { return planar_perimeter(body_); }

double PlanarBoundary::swept(double a, double b) const {
  if (b < a) throw InvalidArgument("PlanarBoundary::swept: reversed interval");
  // Split at every break so each panel sees a smooth integrand.
  std::vector<double> cuts{a};
  if (!breaks_.empty()) {
    const double base = kTwoPi * std::floor(a / kTwoPi);
    for (double turn = base; turn < b; turn += kTwoPi)
      for (double t : breaks_) {
        const double s = turn + t;
        if (s > a && s < b) cuts.push_back(s);
      }
    std::sort(cuts.begin(), cuts.end());
  }
  cuts.push_back(b);

  const GaussLegendreRule& gl = panel_rule();
  std::vector<double> terms;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double len = cuts[i + 1] - lo;
    if (len <= 0.0) continue;
    const int panels = std::max(1, static_cast<int>(std::ceil(len / kMaxPanel)));
    const double w = len / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = lo + (p + 0.5) * w;
      for (int q = 0; q < kPanelPoints; ++q) {
        const double t = mid + 0.5 * w * gl.nodes[q];
        const Direction u = Direction::from_angle(t);
        terms.push_back(0.5 * w * gl.weights[q] * ballbody::support(body_, u) *
                        principal_radii(body_, u).radii.front());
      }
    }
  }
  return pairwise_sum(terms);
}

std::vector<PlanarBoundary::Crossing> PlanarBoundary::crossings(const std::function<double(const Vec&)>& g) const {
  std::vector<Crossing> out;
  std::vector<double> values(kSamples);
  for (int i = 0; i < kSamples; ++i) values[i] = g(samples_[i]);
  for (int i = 0; i < kSamples; ++i) {
    const int j = (i + 1) % kSamples;
    const bool in_i = values[i] > 0.0;
    const bool in_j = values[j] > 0.0;
    if (in_i == in_j) continue;
    double lo = sample_theta_[i];
    double hi = j == 0 ? kTwoPi : sample_theta_[j];
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((g(point(mid)) > 0.0) == in_i)
        lo = mid;
      else
        hi = mid;
    }
    out.push_back({0.5 * (lo + hi), !in_i});
  }
  return out;
}

double PlanarBoundary::cut_volume(const Vec& center) const {
  if (center.size() != 2) throw InvalidArgument("cut_volume: center must be planar");
  auto g = [&](const Vec& y) {
    const double dx = y[0] - center[0];
    const double dy = y[1] - center[1];
    return dx * dx + dy * dy - 1.0;
  };
  const std::vector<Crossing> xs = crossings(g);
  if (xs.empty()) {
    if (g(samples_.front()) <= 0.0) return 0.0;
    // Whole boundary outside the disc: either disjoint or the disc sits
    // inside K.
    bool inside = true;
    for (int i = 0; i < kSamples && inside; ++i) {
      const double t = sample_theta_[i];
      if (center[0] * std::cos(t) + center[1] * std::sin(t) > support(t)) inside = false;
    }
    return inside ? area_ - std::numbers::pi : area_;
  }
  // Each removed piece runs from a leaving crossing to the next entering
  // one; it is closed by the disc arc traversed clockwise.
  std::size_t first = 0;
  while (!xs[first].leaving) ++first;
  double twice = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const Crossing& a = xs[(first + k) % xs.size()];
    if (!a.leaving) continue;
    const Crossing& b = xs[(first + k + 1) % xs.size()];
    double tb = b.theta;
    if (tb <= a.theta) tb += kTwoPi;
    twice += swept(a.theta, tb);
    const Vec pa = point(a.theta);
    const Vec pb = point(b.theta);
    const double fa = std::atan2(pa[1] - center[1], pa[0] - center[0]);
    const double fb_raw = std::atan2(pb[1] - center[1], pb[0] - center[0]);
    const double fb = fa + wrap(fb_raw - fa);
    twice -= center[0] * (std::sin(fb) - std::sin(fa)) - center[1] * (std::cos(fb) - std::cos(fa)) + (fb - fa);
  }
  return 0.5 * twice;
}

double PlanarBoundary::cut_halfplane(const Vec& normal, double offset) const {
  if (normal.size() != 2) throw InvalidArgument("cut_halfplane: normal must be planar");
  auto g = [&](const Vec& y) { return dot(y, normal) - offset; };
  const std::vector<Crossing> xs = crossings(g);
  if (xs.empty()) return g(samples_.front()) > 0.0 ? area_ : 0.0;
  std::size_t first = 0;
  while (!xs[first].leaving) ++first;
  double twice = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const Crossing& a = xs[(first + k) % xs.size()];
    if (!a.leaving) continue;
    const Crossing& b = xs[(first + k + 1) % xs.size()];
    double tb = b.theta;
    if (tb <= a.theta) tb += kTwoPi;
    twice += swept(a.theta, tb) + cross(point(b.theta), point(a.theta));
  }
  return 0.5 * twice;
}

}  // namespace ballbody
