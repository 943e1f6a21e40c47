#include "ballbody/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "ballbody/errors.hpp"

namespace ballbody {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Matrix embed(const Matrix& tangent, const TangentFrame& frame) {
  const std::size_t n = frame.base.dim();
  Matrix h(n, n);
  for (std::size_t a = 0; a + 1 < n; ++a)
    for (std::size_t b = 0; b + 1 < n; ++b) {
      const double v = tangent(a, b);
      if (v == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) += v * frame.basis[a][i] * frame.basis[b][j];
    }
  return h;
}

Matrix restrict_to(const Matrix& h, const TangentFrame& frame) {
  const std::size_t k = frame.basis.size();
  Matrix t(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    const Vec ha = h.apply(frame.basis[a]);
    for (std::size_t b = 0; b < k; ++b) t(b, a) = dot(frame.basis[b], ha);
  }
  return t;
}

Hessian finite_difference_hessian(const Body& body, const Direction& u, double step) {
  const TangentFrame frame = tangent_frame(u);
  const std::size_t k = frame.basis.size();
  const Vec g0 = contact_point(body, u).point;
  auto g = [&](const Vec& b, double t) { return contact_point(body, Direction::normalize(axpy(u.coords(), t, b))).point; };

  Matrix coarse(k, k);
  Matrix fine(k, k);
  double kink = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    const Vec& b = frame.basis[a];
    const Vec gp = g(b, step), gm = g(b, -step);
    const Vec gph = g(b, 0.5 * step), gmh = g(b, -0.5 * step);
    const Vec gp2 = g(b, 2.0 * step), gm2 = g(b, -2.0 * step);
    Vec dc(g0.size()), df(g0.size());
    for (std::size_t i = 0; i < g0.size(); ++i) {
      dc[i] = (gp[i] - gm[i]) / (2.0 * step);
      df[i] = (gph[i] - gmh[i]) / step;
      const double forward = (-3.0 * g0[i] + 4.0 * gp[i] - gp2[i]) / (2.0 * step);
      const double backward = (3.0 * g0[i] - 4.0 * gm[i] + gm2[i]) / (2.0 * step);
      kink = std::max(kink, std::abs(forward - backward));
    }
    for (std::size_t c = 0; c < k; ++c) {
      coarse(c, a) = dot(frame.basis[c], dc);
      fine(c, a) = dot(frame.basis[c], df);
    }
  }
  Matrix est = coarse;
  if ((coarse - fine).max_abs() > 1e-5) est = (fine * 4.0 - coarse) * (1.0 / 3.0);

  Hessian out;
  out.finite_difference = true;
  out.smooth = kink <= 1e-6;
  out.asymmetry = 0.5 * (est - est.transpose()).max_abs();
  const Matrix sym = (est + est.transpose()) * 0.5;
  out.matrix = embed(sym, frame);
  return out;
}

Hessian closed_form(const Body& body, const Direction& u, double step) {
  const Vec& x = u.coords();
  return std::visit(
      overloaded{
          [&](const BallShape& b) { return Hessian{Matrix::tangent_projector(x) * b.radius}; },
          [&](const Trig2DShape& t) {
            const Vec e_perp{-x[1], x[0]};
            return Hessian{Matrix::outer(e_perp, e_perp) * t.rho(std::atan2(x[1], x[0]))};
          },
          [&](const BallIntersectionShape& bi) {
            if (bi.dim() != 2) return finite_difference_hessian(body, u, step);
            // Arc normals see a unit circle; vertex normal cones see a point.
            const auto loc = bi.locate(std::atan2(x[1], x[0]));
            return Hessian{loc.on_arc ? Matrix::tangent_projector(x) : Matrix(2, 2)};
          },
          [&](const MinkowskiShape& m) {
            Hessian sum{Matrix(x.size(), x.size())};
            for (const auto& [w, part] : m.parts) {
              if (w == 0.0) continue;
              const Hessian h = closed_form(part, u, step);
              sum.matrix += h.matrix * w;
              sum.asymmetry = std::max(sum.asymmetry, h.asymmetry);
              sum.finite_difference = sum.finite_difference || h.finite_difference;
              sum.smooth = sum.smooth && h.smooth;
            }
            return sum;
          },
          [&](const CDualShape& c) {
            // grad^2 h_K(-u) + grad^2 h_{K^c}(u) = I - u u^T.
            Hessian h = closed_form(c.inner, -u, step);
            h.matrix = Matrix::tangent_projector(x) - h.matrix;
            return h;
          },
          [&](const ReflectedShape& r) { return closed_form(r.inner, -u, step); },
      },
      body.shape().v);
}

}  // namespace

Hessian hessian_homogeneous(const Body& body, const Direction& u, double step, HessianMethod method) {
  if (static_cast<int>(u.dim()) != body.dim()) throw InvalidArgument("hessian_homogeneous: dimension mismatch");
  if (!(step >= 1e-6 && step <= 1e-2)) throw InvalidArgument("hessian_homogeneous: step must lie in [1e-6, 1e-2]");
  Hessian h = method == HessianMethod::FiniteDifference ? finite_difference_hessian(body, u, step)
                                                        : closed_form(body, u, step);
  // Enforce the homogeneity null space.
  const Matrix p = Matrix::tangent_projector(u.coords());
  h.matrix = p * h.matrix * p;
  return h;
}

CurvatureSpectrum principal_radii(const Body& body, const Direction& u, HessianMethod method, double step) {
  const Hessian h = hessian_homogeneous(body, u, step, method);
  const TangentFrame frame = tangent_frame(u);
  Matrix t = restrict_to(h.matrix, frame);
  t = (t + t.transpose()) * 0.5;
  CurvatureSpectrum spec{u, jacobi_eigenvalues(t, 1e-12).eigenvalues, h.asymmetry, contact_point(body, u).point,
                         h.smooth, h.finite_difference};
  return spec;
}

DualityResidual curvature_duality_residual(const Body& body, const Direction& u) {
  if (is_point(body)) throw UnsupportedBodyError("curvature_duality_residual: body is a point");
  if (is_unit_ball_translate(body))
    throw UnsupportedBodyError("curvature_duality_residual: body is a translate of the unit ball (its dual is a point)");
  const CurvatureSpectrum primal = principal_radii(body, u);
  const Body dual = c_dual_explicit(body);
  const HessianMethod dual_method = contains_ball_intersection(dual) ? HessianMethod::FiniteDifference : HessianMethod::Auto;
  const CurvatureSpectrum dual_spec = principal_radii(dual, -u, dual_method);
  DualityResidual out;
  out.primal = primal.radii;
  out.dual = dual_spec.radii;
  out.smooth = primal.smooth && dual_spec.smooth;
  const std::size_t k = primal.radii.size();
  for (std::size_t i = 0; i < k; ++i)
    out.value = std::max(out.value, std::abs(primal.radii[i] + dual_spec.radii[k - 1 - i] - 1.0));
  return out;
}

MembershipCheck ball_body_check(const Body& body, const SphereGrid& grid, double tol) {
  if (grid.dim != body.dim()) throw InvalidArgument("is_ball_body: grid dimension does not match body");
  MembershipCheck out;
  out.invariant_violations = invariant_violations(body);
  if (!out.invariant_violations.empty()) out.member = false;
  // Sequential so the reported node is the first one in grid order.
  for (const Direction& u : grid.nodes) {
    CurvatureSpectrum spec = principal_radii(body, u);
    if (!spec.smooth) continue;
    const bool bad = spec.radii.front() < -tol || spec.radii.back() > 1.0 + tol;
    if (bad) {
      out.member = false;
      out.failure = std::move(spec);
      break;
    }
  }
  return out;
}

bool is_ball_body(const Body& body, const SphereGrid& grid, double tol) { return ball_body_check(body, grid, tol).member; }

}  // namespace ballbody
