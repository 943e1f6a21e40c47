#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ballbody/linalg.hpp"

namespace ballbody {

// A point on the unit sphere S^{n-1}.
class Direction {
 public:
  // Throws InvalidArgument unless |coords| = 1 within 1e-12.
  explicit Direction(Vec coords);
  // Normalizes; throws InvalidArgument for the zero vector.
  static Direction normalize(const Vec& v);
  static Direction from_angle(double theta);

  const Vec& coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  Direction operator-() const;

 private:
  struct Trusted {};
  Direction(Vec coords, Trusted) : coords_(std::move(coords)) {}
  Vec coords_;
};

enum class GridScheme { UniformAngle2D, ProductGaussTrapezoid3D, MonteCarlo };

std::string to_string(GridScheme scheme);

// Quadrature rule for the normalized (probability) Haar measure on S^{n-1}.
struct SphereGrid {
  int dim = 0;
  int resolution = 0;
  GridScheme scheme = GridScheme::UniformAngle2D;
  std::optional<std::uint64_t> seed;
  std::vector<Direction> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  std::string describe() const;
};

// Rotation applied to deterministic grids so nodes avoid the symmetry axes of
// test bodies, where non-smooth normals tend to sit.
inline constexpr double kGridRotationOffset = 1e-3;

SphereGrid make_grid(int dim, int resolution, GridScheme scheme,
                     std::optional<std::uint64_t> seed = std::nullopt);

// UniformAngle2D for n = 2, ProductGaussTrapezoid3D for n = 3, MonteCarlo
// otherwise (seed required).
SphereGrid default_grid(int dim, int resolution, std::optional<std::uint64_t> seed = std::nullopt);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int points);

// Fixed-order pairwise summation.
double pairwise_sum(std::span<const double> values);

// Sum of w_i f(u_i). Nodes may be evaluated concurrently; the reduction
// order is fixed. A non-finite f value raises NumericalDomainError naming
// the node.
double integrate(const SphereGrid& grid, const std::function<double(const Direction&)>& f);

// Weighted sum of precomputed node values.
double integrate_values(const SphereGrid& grid, std::span<const double> values);

struct TangentFrame {
  Direction base;
  std::vector<Vec> basis;  // n-1 orthonormal vectors spanning base^perp
};

// Householder reflection taking e_n to u, applied to e_1 ... e_{n-1}.
TangentFrame tangent_frame(const Direction& u);

}  // namespace ballbody
