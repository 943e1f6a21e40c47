#include "ballbody/sphere_quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ballbody/errors.hpp"
#include "ballbody/parallel.hpp"

namespace ballbody {

Direction::Direction(Vec coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidArgument("Direction: empty coordinate vector");
  const double len = norm(coords_);
  if (!(std::abs(len - 1.0) <= 1e-12))
    throw InvalidArgument("Direction: coordinates are not a unit vector (norm " + std::to_string(len) + ")");
}

Direction Direction::normalize(const Vec& v) {
  const double len = norm(v);
  if (!(len > 0.0) || !std::isfinite(len)) throw InvalidArgument("Direction::normalize: zero or non-finite vector");
  return Direction(scale(v, 1.0 / len), Trusted{});
}

Direction Direction::from_angle(double theta) { return Direction({std::cos(theta), std::sin(theta)}, Trusted{}); }

Direction Direction::operator-() const { return Direction(negate(coords_), Trusted{}); }

std::string to_string(GridScheme scheme) {
  switch (scheme) {
    case GridScheme::UniformAngle2D:
      return "UniformAngle2D";
    case GridScheme::ProductGaussTrapezoid3D:
      return "ProductGaussTrapezoid3D";
    case GridScheme::MonteCarlo:
      return "MonteCarlo";
  }
  return "unknown";
}

std::string SphereGrid::describe() const {
  std::ostringstream os;
  os << to_string(scheme) << "(dim=" << dim << ", resolution=" << resolution;
  if (seed) os << ", seed=" << *seed;
  os << ", nodes=" << nodes.size() << ")";
  return os.str();
}

GaussLegendreRule gauss_legendre(int points) {
  if (points < 1) throw InvalidArgument("gauss_legendre: need at least one point");
  GaussLegendreRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Three-term recurrence for P_n(x) and its derivative.
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = points == 1 ? x : p1;
      const double pnm1 = points == 1 ? 1.0 : p0;
      dp = points * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= points; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = points == 1 ? x : p1;
      const double pnm1 = points == 1 ? 1.0 : p0;
      dp = points * (x * pn - pnm1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[points - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[points - 1 - i] = w;
  }
  if (points % 2 == 1) rule.nodes[points / 2] = 0.0;
  return rule;
}

namespace {

SphereGrid uniform_angle_grid(int resolution) {
  SphereGrid g;
  g.dim = 2;
  g.resolution = resolution;
  g.scheme = GridScheme::UniformAngle2D;
  g.nodes.reserve(resolution);
  const double w = 1.0 / resolution;
  for (int k = 0; k < resolution; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / resolution + kGridRotationOffset;
    g.nodes.push_back(Direction::from_angle(theta));
  }
  g.weights.assign(resolution, w);
  return g;
}

SphereGrid product_grid(int resolution) {
  SphereGrid g;
  g.dim = 3;
  g.resolution = resolution;
  g.scheme = GridScheme::ProductGaussTrapezoid3D;
  const GaussLegendreRule gl = gauss_legendre(resolution);
  const int azimuths = 2 * resolution;
  const double ca = std::cos(kGridRotationOffset);
  const double sa = std::sin(kGridRotationOffset);
  g.nodes.reserve(static_cast<std::size_t>(resolution) * azimuths);
  g.weights.reserve(static_cast<std::size_t>(resolution) * azimuths);
  for (int i = 0; i < resolution; ++i) {
    const double z = gl.nodes[i];
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    for (int j = 0; j < azimuths; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / azimuths + kGridRotationOffset;
      const double x = rho * std::cos(phi);
      const double y = rho * std::sin(phi);
      // Tilt about the x axis so the poles are off the coordinate axes.
      g.nodes.push_back(Direction::normalize({x, ca * y - sa * z, sa * y + ca * z}));
      g.weights.push_back(0.5 * gl.weights[i] / azimuths);
    }
  }
  return g;
}

SphereGrid monte_carlo_grid(int dim, int resolution, std::uint64_t seed) {
  SphereGrid g;
  g.dim = dim;
  g.resolution = resolution;
  g.scheme = GridScheme::MonteCarlo;
  g.seed = seed;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  g.nodes.reserve(resolution);
  Vec v(dim);
  while (static_cast<int>(g.nodes.size()) < resolution) {
    for (double& x : v) x = gauss(rng);
    if (norm(v) < 1e-12) continue;
    g.nodes.push_back(Direction::normalize(v));
  }
  g.weights.assign(resolution, 1.0 / resolution);
  return g;
}

}  // namespace

SphereGrid make_grid(int dim, int resolution, GridScheme scheme, std::optional<std::uint64_t> seed) {
  if (dim < 2) throw InvalidArgument("make_grid: dimension must be at least 2");
  if (resolution < 4) throw InvalidArgument("make_grid: resolution must be at least 4");
  switch (scheme) {
    case GridScheme::UniformAngle2D:
      if (dim != 2) throw InvalidArgument("make_grid: UniformAngle2D requires dim = 2");
      return uniform_angle_grid(resolution);
    case GridScheme::ProductGaussTrapezoid3D:
      if (dim != 3) throw InvalidArgument("make_grid: ProductGaussTrapezoid3D requires dim = 3");
      return product_grid(resolution);
    case GridScheme::MonteCarlo:
      if (!seed) throw InvalidArgument("make_grid: MonteCarlo requires a seed");
      return monte_carlo_grid(dim, resolution, *seed);
  }
  throw InvalidArgument("make_grid: unknown scheme");
}

SphereGrid default_grid(int dim, int resolution, std::optional<std::uint64_t> seed) {
  if (dim == 2) return make_grid(2, resolution, GridScheme::UniformAngle2D);
  if (dim == 3) return make_grid(3, resolution, GridScheme::ProductGaussTrapezoid3D);
  return make_grid(dim, resolution, GridScheme::MonteCarlo, seed);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t mid = values.size() / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

double integrate_values(const SphereGrid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) throw InvalidArgument("integrate_values: value count does not match grid");
  std::vector<double> terms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) terms[i] = grid.weights[i] * values[i];
  return pairwise_sum(terms);
}

double integrate(const SphereGrid& grid, const std::function<double(const Direction&)>& f) {
  std::vector<double> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const double v = f(grid.nodes[i]);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrate: non-finite integrand at node " << i << " (";
      for (std::size_t k = 0; k < grid.nodes[i].dim(); ++k) os << (k ? ", " : "") << grid.nodes[i][k];
      os << ")";
      throw NumericalDomainError(os.str());
    }
    values[i] = v;
  });
  return integrate_values(grid, values);
}

TangentFrame tangent_frame(const Direction& u) {
  const std::size_t n = u.dim();
  // v = e_n - u; H = I - 2 v v^T / |v|^2 maps e_n to u.
  Vec v = negate(u.coords());
  const double un = u[n - 1];
  double perp2 = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) perp2 += u[i] * u[i];
  // 1 - u_n without cancellation when u is close to e_n.
  v[n - 1] = un > 0.0 ? perp2 / (1.0 + un) : 1.0 - un;
  const double vv = dot(v, v);
  TangentFrame frame{u, {}};
  frame.basis.reserve(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    Vec b(n, 0.0);
    b[j] = 1.0;
    if (vv > 0.0) {
      const double f = 2.0 * v[j] / vv;
      for (std::size_t i = 0; i < n; ++i) b[i] -= f * v[i];
    }
    frame.basis.push_back(std::move(b));
  }
  return frame;
}

}  // namespace ballbody
