#pragma once

#include <functional>
#include <vector>

#include "ballbody/body.hpp"

namespace ballbody {

// Exact perimeter from the representation (2D only).
double planar_perimeter(const Body& body);

// Normal angles in [0, 2 pi) where the radius of curvature of a planar body
// may jump (ends of ball-polytope arcs, mapped through duals and sums).
std::vector<double> planar_breaks(const Body& body);

// Boundary of a planar body parametrised by outer normal angle: x(theta) is
// the contact point, and d x / d theta = rho(theta) e'(theta).
class PlanarBoundary {
 public:
  explicit PlanarBoundary(Body body);  // UnsupportedBodyError unless 2D

  const Body& body() const { return body_; }
  Vec point(double theta) const;
  double support(double theta) const;
  double radius(double theta) const;
  const std::vector<double>& breaks() const { return breaks_; }

  // Integral of h rho over [a, b] (a <= b, may exceed 2 pi): twice the area
  // swept by the boundary piece as seen from the origin.
  double swept(double a, double b) const;

  double area() const { return area_; }
  double perimeter() const;

  // Area of K outside the unit disc at `center`.
  double cut_volume(const Vec& center) const;
  // Area of K in the half-plane {<y, n> >= offset}, n unit.
  double cut_halfplane(const Vec& normal, double offset) const;

 private:
  struct Crossing {
    double theta;
    bool leaving;  // boundary leaves the kept region as theta increases
  };
  std::vector<Crossing> crossings(const std::function<double(const Vec&)>& g) const;

  Body body_;
  std::vector<double> breaks_;
  std::vector<double> sample_theta_;
  std::vector<Vec> samples_;
  double area_ = 0.0;
};

}  // namespace ballbody
