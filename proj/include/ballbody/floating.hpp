#pragma once

#include <optional>
#include <vector>

#include "ballbody/body.hpp"

namespace ballbody {

// c_n = 1/2 ((n + 1) / Vol_{n-1}(B^{n-1}))^{2/(n+1)}.
double floating_constant(int n);

// Vol(K) - Vol(K cap (center + B)); planar bodies only.
double cut_volume(const Body& body, const Vec& center);

struct FloatingResult {
  double delta = 0.0;  // absolute cap area
  std::optional<Body> body;  // ball polytope approximant (cutting-disc version)
  std::vector<Vec> polygon;  // half-plane version
  double volume_body = 0.0;
  double volume_floating = 0.0;
  double volume_deficit = 0.0;
  double ratio = 0.0;  // deficit / delta^{2/3}
  int directions_used = 0;
  double max_cut_error = 0.0;  // max over directions of |cut - delta| / delta
  bool contained = true;       // F inside K at 512 boundary samples, tol 1e-6
  std::vector<double> offsets;  // per direction: t for discs, h(u) - offset for half-planes
};

struct FloatingOptions {
  int directions = 256;
  // Read delta as a fraction of Vol(K) instead of an absolute area.
  bool relative = false;
};

// Intersection of the m unit discs centred at x_K(u) - (1 + t) u, with t
// chosen per direction so that each disc cuts area delta from K.
FloatingResult floating_body(const Body& body, double delta, const FloatingOptions& opts = {});

// Same pipeline with half-planes {<y,u> <= h_K(u) - t}; polygon area from
// consecutive line intersections.
FloatingResult halfspace_floating_body(const Body& body, double delta, const FloatingOptions& opts = {});

struct LimitFit {
  double estimate = 0.0;  // L in ratio = L + a delta^{1/3}
  double slope = 0.0;
  double fit_residual = 0.0;  // RMS of the fit residuals
  std::vector<FloatingResult> sweep;
};

// Least-squares fit over precomputed (delta, ratio) pairs.
LimitFit fit_limit(const std::vector<double>& deltas, const std::vector<double>& ratios);

// >= 4 strictly decreasing deltas spanning >= 2 decades.
LimitFit limit_estimate(const Body& body, const std::vector<double>& deltas, const FloatingOptions& opts = {},
                        bool halfspace = false);

// Max principal radius below 1 - 1e-3 on a 4096-angle grid and no
// ball-polytope piece: the setting in which the limit law applies.
bool floating_limit_applies(const Body& body);

}  // namespace ballbody
