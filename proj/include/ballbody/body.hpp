#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ballbody/linalg.hpp"
#include "ballbody/sphere_quadrature.hpp"

namespace ballbody {

struct Shape;

// A convex body in R^n described by its support function. Immutable and
// cheap to copy (shared representation).
class Body {
 public:
  static Body ball(Vec center, double radius);
  struct Term {
    int k;
    double eps;
  };
  // h(theta) = a + sum eps_k cos(k theta), planar only, k >= 2.
  static Body trig2d(double a, std::vector<Term> terms);
  // Intersection of unit balls centred at the given points.
  static Body ball_intersection(std::vector<Vec> centers);
  // Convex combination; weights must be >= 0 and sum to 1 within 1e-12.
  static Body minkowski(std::vector<std::pair<double, Body>> parts);
  // Lazy c-dual wrapper with no simplification (see c_dual()).
  static Body c_dual_of(Body inner);
  // -K.
  static Body reflected(Body inner);

  int dim() const { return dim_; }
  const Shape& shape() const { return *shape_; }

 private:
  Body(int dim, std::shared_ptr<const Shape> shape) : dim_(dim), shape_(std::move(shape)) {}
  int dim_ = 0;
  std::shared_ptr<const Shape> shape_;
};

struct BallShape {
  Vec center;
  double radius = 0.0;
};

struct Trig2DShape {
  double a = 0.0;
  std::vector<Body::Term> terms;

  double h(double theta) const;
  double dh(double theta) const;
  double d2h(double theta) const;
  // Radius of curvature h + h''.
  double rho(double theta) const;
};

// One arc of the planar boundary of a ball polytope: the part of circle
// `disc` whose outward normals have angles in [start, start + length].
struct Arc {
  int disc = 0;
  double start = 0.0;
  double length = 0.0;
};

class BallIntersectionShape {
 public:
  explicit BallIntersectionShape(std::vector<Vec> centers);

  const std::vector<Vec>& centers() const { return centers_; }
  int dim() const { return static_cast<int>(centers_.front().size()); }
  // Centre of the largest inscribed ball, equal to the centre of the
  // smallest ball enclosing the centres; inradius = 1 - enclosing radius.
  const Vec& chebyshev_center() const { return chebyshev_center_; }
  double inradius() const { return inradius_; }

  // Planar structure, sorted by start angle in [0, 2 pi).
  const std::vector<Arc>& arcs() const { return arcs_; }
  // Planar lookup: the arc containing normal angle theta, or the arc whose
  // end vertex owns the normal cone containing theta (on_arc = false).
  struct Location {
    std::size_t arc = 0;
    bool on_arc = true;
  };
  Location locate(double theta) const;
  double arc_length() const;
  // Exact planar area from the arc structure.
  double exact_area() const;

  // Maximiser of <y, u> over the body for a unit u.
  Vec maximizer(const Vec& u) const;

 private:
  Vec maximizer_projected(const Vec& u) const;

  std::vector<Vec> centers_;
  Vec chebyshev_center_;
  double inradius_ = 0.0;
  std::vector<Arc> arcs_;
};

struct MinkowskiShape {
  std::vector<std::pair<double, Body>> parts;
};

struct CDualShape {
  Body inner;
};

struct ReflectedShape {
  Body inner;
};

struct Shape {
  std::variant<BallShape, Trig2DShape, BallIntersectionShape, MinkowskiShape, CDualShape, ReflectedShape> v;
};

struct ContactPoint {
  Direction direction;
  Vec point;
};

// h_K(x) for non-zero x; 1-homogeneous.
double support(const Body& body, const Vec& x);
double support(const Body& body, const Direction& u);
// Gradient of h_K at u, i.e. the boundary point with outer normal u.
ContactPoint contact_point(const Body& body, const Direction& u);

// K^c with the algebraic simplifications c_dual(Ball{c,r}) = Ball{c,1-r}
// and c_dual(c_dual(K)) = K.
Body c_dual(const Body& body);

// Same body as c_dual(), but with every node rewritten into an explicit
// representation where one exists (Trig2D -> Trig2D, Minkowski -> Minkowski
// of duals). Lets curvature data of K^c be computed without going through
// the Hessian identity that links it to K.
Body c_dual_explicit(const Body& body);

Body minkowski(std::vector<std::pair<double, Body>> parts);

// Exact for Ball and BallIntersection; other shapes test <p,u> <= h(u) + tol
// over a fixed 2048-node grid, which is an outer approximation.
bool contains(const Body& body, const Vec& p, double tol);

bool is_point(const Body& body);
bool is_unit_ball_translate(const Body& body);
bool contains_ball_intersection(const Body& body, int min_dim = 2);

// Violations of the class invariants (radius in [0,1], Trig2D curvature
// radius in [0,1] on 4096 angles, ...). Empty when the body is valid.
std::vector<std::string> invariant_violations(const Body& body);

// One-line human readable description.
std::string describe(const Body& body);

}  // namespace ballbody
