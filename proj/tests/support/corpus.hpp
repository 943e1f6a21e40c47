#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ballbody/body.hpp"

namespace corpus {

using ballbody::Body;
using ballbody::Vec;

struct Named {
  std::string name;
  Body body;
  bool ball = false;       // a ball (any radius)
  bool polytope = false;   // planar ball polytope: Omega^c = 0 structurally
};

inline std::vector<Named> balls2d() {
  std::vector<Named> out;
  for (int i = 1; i <= 9; ++i) {
    const double r = 0.1 * i;
    out.push_back({"ball r=" + std::to_string(r), Body::ball({0.0, 0.0}, r), true, false});
  }
  return out;
}

inline Body trig(int i) {
  switch (i) {
    case 0:
      return Body::trig2d(0.5, {{2, 0.05}});
    case 1:
      return Body::trig2d(0.4, {{3, 0.02}});
    case 2:
      return Body::trig2d(0.6, {{2, 0.04}, {3, 0.01}});
    case 3:
      return Body::trig2d(0.3, {{4, 0.01}});
    default:
      return Body::trig2d(0.7, {{2, 0.06}, {5, 0.004}});
  }
}

inline std::vector<Named> trig2d() {
  std::vector<Named> out;
  for (int i = 0; i < 5; ++i) out.push_back({"trig " + std::to_string(i), trig(i)});
  return out;
}

inline Body lens() { return Body::ball_intersection({{0.5, 0.0}, {-0.5, 0.0}}); }

inline Body triangle() {
  std::vector<Vec> c;
  for (int k = 0; k < 3; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 3;
    c.push_back({0.6 * std::cos(t), 0.6 * std::sin(t)});
  }
  return Body::ball_intersection(c);
}

inline Body pentagon() {
  std::vector<Vec> c;
  for (int k = 0; k < 5; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 5 + 0.1;
    c.push_back({0.3 * std::cos(t), 0.3 * std::sin(t)});
  }
  return Body::ball_intersection(c);
}

inline std::vector<Named> polytopes2d() {
  return {{"lens", lens(), false, true}, {"triangle", triangle(), false, true}, {"pentagon", pentagon(), false, true}};
}

inline std::vector<Named> minkowski2d() {
  using ballbody::c_dual;
  using ballbody::minkowski;
  return {
      {"1/2 B(0.2) + 1/2 trig0", minkowski({{0.5, Body::ball({0, 0}, 0.2)}, {0.5, trig(0)}})},
      {"1/4 B((0.1,0),0.2) + 3/4 trig0", minkowski({{0.25, Body::ball({0.1, 0}, 0.2)}, {0.75, trig(0)}})},
      {"1/2 lens + 1/2 B(0.5)", minkowski({{0.5, lens()}, {0.5, Body::ball({0, 0}, 0.5)}})},
      {"1/3 trig1 + 1/3 trig3 + 1/3 B(0.8)",
       minkowski({{1.0 / 3, trig(1)}, {1.0 / 3, trig(3)}, {1.0 / 3, Body::ball({0, 0}, 0.8)}})},
      {"0.3 trig2^c + 0.7 trig1", minkowski({{0.3, c_dual(trig(2))}, {0.7, trig(1)}})},
  };
}

inline std::vector<Named> all2d() {
  std::vector<Named> out = balls2d();
  for (auto* part : {&trig2d, &minkowski2d, &polytopes2d}) {
    auto v = (*part)();
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

inline Body tetra3d(double scale) {
  const double s = scale;
  return Body::ball_intersection({{s, 0, 0}, {-0.5 * s, s * std::sqrt(3.0) / 2, 0}, {-0.5 * s, -s * std::sqrt(3.0) / 2, 0},
                                  {0, 0, s}});
}

inline std::vector<Named> minkowski3d() {
  using ballbody::minkowski;
  return {
      {"1/2 B3(0.4) + 1/2 tetra(0.4)", minkowski({{0.5, Body::ball({0, 0, 0}, 0.4)}, {0.5, tetra3d(0.4)}})},
      {"1/3 tetra(0.5) + 2/3 B3(0.6)", minkowski({{1.0 / 3, tetra3d(0.5)}, {2.0 / 3, Body::ball({0.1, 0, 0}, 0.6)}})},
      {"1/2 B3(0.3) + 1/2 B3((0,0.1,0),0.7)",
       minkowski({{0.5, Body::ball({0, 0, 0}, 0.3)}, {0.5, Body::ball({0, 0.1, 0}, 0.7)}})},
  };
}

// Area of the intersection of discs with radii a, b whose centres are d apart.
inline double disc_overlap(double a, double b, double d) {
  if (d >= a + b) return 0.0;
  if (d <= std::abs(a - b)) return std::numbers::pi * std::pow(std::min(a, b), 2);
  const double alpha = std::acos((d * d + a * a - b * b) / (2 * d * a));
  const double beta = std::acos((d * d + b * b - a * a) / (2 * d * b));
  return a * a * (alpha - std::sin(2 * alpha) / 2) + b * b * (beta - std::sin(2 * beta) / 2);
}

}  // namespace corpus
