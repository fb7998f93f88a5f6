#include "finsler/curvature.hpp"

#include "finsler/geodesics.hpp"

#include <cmath>

namespace finsler {

namespace {

// Central difference with one Richardson pass.
template <class F>
auto richardson(const F& f, double h) {
  auto d1 = ((f(h) - f(-h)) / (2.0 * h)).eval();
  auto d2 = ((f(0.5 * h) - f(-0.5 * h)) / h).eval();
  return ((4.0 * d2 - d1) / 3.0).eval();
}

}  // namespace

Mat riemann_curvature(const MetricSpec& spec, const Point& x, const TangentVector& y, const NumericConfig& cfg) {
  spec.require_domain(x);
  const int n = spec.dim();
  if (y.size() != n || !(y.norm() > 0.0)) fail(ErrorCode::ZeroVector, "curvature needs a nonzero vector");
  if (spec.is_minkowski()) return Mat::Zero(n, n);

  // Without an exact spray, G is already a second difference of F^2 and each
  // further difference amplifies its rounding noise, so every step is coarsened.
  const bool exact_spray = spec.differentiable() && 2 * n <= ad::kMaxVars;
  NumericConfig gcfg = cfg;
  double s1 = cfg.fd_step_rel, s2 = cfg.fd_step_nested;
  if (!exact_spray) {
    gcfg.fd_step_rel = 3.0 * cfg.fd_step_nested;
    s1 = 10.0 * cfg.fd_step_nested;
    s2 = 300.0 * cfg.fd_step_nested;
  }
  auto G = [&](const Vec& xx, const Vec& yy) { return spray_coefficients(spec, xx, yy, gcfg); };
  const double ynorm = y.norm();
  const double hx = s1;
  const double hy = s1 * ynorm;
  const double Hx = s2;
  const double Hy = s2 * ynorm;

  const Vec G0 = G(x, y);
  Mat dGdx(n, n), dGdy(n, n);
  for (int k = 0; k < n; ++k) {
    const Vec ek = Vec::Unit(n, k);
    dGdx.col(k) = richardson([&](double s) { return G(x + s * ek, y); }, hx);
    dGdy.col(k) = richardson([&](double s) { return G(x, y + s * ek); }, hy);
  }

  // Phi(y) = y^j dG/dx^j as a function of y (direction included).
  auto Phi = [&](const Vec& yy) {
    const double eps = Hx / yy.norm();
    return richardson([&](double s) { return G(x + s * yy, yy); }, eps);
  };
  // Psi(y) = w^j dG/dy^j for the fixed vector w = G(x, y).
  const double w_norm = G0.norm();
  auto Psi = [&](const Vec& yy) -> Vec {
    if (w_norm == 0.0) return Vec::Zero(n);
    const double eps = Hy / w_norm;
    return richardson([&](double s) { return G(x, yy + s * G0); }, eps);
  };

  Mat R(n, n);
  for (int k = 0; k < n; ++k) {
    const Vec ek = Vec::Unit(n, k);
    const Vec dPhi = richardson([&](double s) { return Phi(y + s * ek); }, Hy);
    const Vec dPsi = richardson([&](double s) { return Psi(y + s * ek); }, Hy);
    const Vec mixed = dPhi - dGdx.col(k);  // y^j d2G/dx^j dy^k
    R.col(k) = 2.0 * dGdx.col(k) - mixed + 2.0 * dPsi - dGdy * dGdy.col(k);
  }
  return R;
}

double flag_curvature_from(const Mat& R, const Mat& g, const TangentVector& y, const TangentVector& v) {
  const double gyy = y.dot(g * y);
  const double gvv = v.dot(g * v);
  const double gyv = y.dot(g * v);
  const double denom = gyy * gvv - gyv * gyv;
  if (!(denom > 1e-12 * gyy * gvv)) fail(ErrorCode::Degenerate, "flag plane is degenerate");
  return v.dot(g * (R * v)) / denom;
}

double flag_curvature(const MetricSpec& spec, const Point& x, const TangentVector& y, const TangentVector& v,
                      const NumericConfig& cfg) {
  const Mat R = riemann_curvature(spec, x, y, cfg);
  const Mat g = fundamental_tensor(spec, x, y, cfg);
  return flag_curvature_from(R, g, y, v);
}

namespace {

std::vector<Vec> complement_basis(const Mat& g, const Vec& y) {
  const int n = static_cast<int>(y.size());
  std::vector<Vec> basis{y / std::sqrt(y.dot(g * y))};
  for (int i = 0; i < n && static_cast<int>(basis.size()) < n; ++i) {
    Vec v = Vec::Unit(n, i);
    for (const Vec& b : basis) v -= b.dot(g * v) * b;
    const double nv = std::sqrt(std::max(0.0, v.dot(g * v)));
    if (nv > 1e-6) basis.push_back(v / nv);
  }
  basis.erase(basis.begin());
  return basis;
}

}  // namespace

double ricci(const MetricSpec& spec, const Point& x, const TangentVector& y, const NumericConfig& cfg) {
  const Mat R = riemann_curvature(spec, x, y, cfg);
  const Mat g = fundamental_tensor(spec, x, y, cfg);
  double sum = 0.0;
  for (const Vec& e : complement_basis(g, y)) sum += flag_curvature_from(R, g, y, e);
  return sum * y.dot(g * y);
}

CurvatureSample curvature_sample(const MetricSpec& spec, const Point& x, const TangentVector& y,
                                 const std::vector<TangentVector>& flags, const NumericConfig& cfg) {
  CurvatureSample s;
  s.x = x;
  s.y = y;
  s.R = riemann_curvature(spec, x, y, cfg);
  const Mat g = fundamental_tensor(spec, x, y, cfg);
  s.flags = flags;
  for (const Vec& v : flags) s.K.push_back(flag_curvature_from(s.R, g, y, v));
  double sum = 0.0;
  for (const Vec& e : complement_basis(g, y)) sum += flag_curvature_from(s.R, g, y, e);
  s.ricci = sum * y.dot(g * y);
  return s;
}

double distortion(const MetricSpec& spec, const MeasureSpec& measure, const Point& x, const TangentVector& y,
                  const NumericConfig& cfg) {
  const double sigma = density(measure, spec, x, cfg);
  const double det = fundamental_tensor(spec, x, y, cfg).determinant();
  return 0.5 * std::log(det) - std::log(sigma);
}

double s_curvature(const MetricSpec& spec, const MeasureSpec& measure, const Point& x, const TangentVector& y,
                   const NumericConfig& cfg) {
  spec.require_domain(x);
  const double F = eval_metric(spec, x, y);
  if (spec.is_minkowski() && density_is_constant(measure, spec)) return 0.0 * F;
  auto tau_at = [&](double t) {
    const GeodesicPath p = integrate_geodesic(spec, x, y, t, cfg, false);
    if (p.exited_domain) fail(ErrorCode::DomainViolation, "geodesic left the domain during S-curvature evaluation");
    const GeodesicState& s = p.states.back();
    return distortion(spec, measure, s.x, s.v, cfg);
  };
  const double h = 1e-3 / F;
  const double d1 = (tau_at(h) - tau_at(-h)) / (2.0 * h);
  const double d2 = (tau_at(0.5 * h) - tau_at(-0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

double s_curvature_chain(const MetricSpec& spec, const MeasureSpec& measure, const Point& x, const TangentVector& y,
                         const NumericConfig& cfg) {
  spec.require_domain(x);
  const int n = spec.dim();
  auto tau = [&](const Vec& xx, const Vec& yy) { return distortion(spec, measure, xx, yy, cfg); };
  const Vec G = spray_coefficients(spec, x, y, cfg);
  const double hx = cfg.fd_step_nested;
  const double hy = cfg.fd_step_nested * y.norm();
  double S = 0.0;
  for (int k = 0; k < n; ++k) {
    const Vec ek = Vec::Unit(n, k);
    const Eigen::Matrix<double, 1, 1> tx =
        richardson([&](double s) { return Eigen::Matrix<double, 1, 1>(tau(x + s * ek, y)); }, hx);
    const Eigen::Matrix<double, 1, 1> ty =
        richardson([&](double s) { return Eigen::Matrix<double, 1, 1>(tau(x, y + s * ek)); }, hy);
    S += tx(0) * y(k) - 2.0 * G(k) * ty(0);
  }
  return S;
}

SCurvatureSample s_curvature_sample(const MetricSpec& spec, const MeasureSpec& measure, const Point& x,
                                    const TangentVector& y, const NumericConfig& cfg) {
  return SCurvatureSample{x, y, distortion(spec, measure, x, y, cfg), s_curvature(spec, measure, x, y, cfg),
                          measure.name()};
}

}  // namespace finsler
