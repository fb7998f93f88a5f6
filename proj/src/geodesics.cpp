#include "finsler/geodesics.hpp"

#include <cmath>
#include <sstream>

namespace finsler {

namespace {

Vec spray_ad(const MetricSpec& spec, const Point& x, const TangentVector& y) {
  const int n = spec.dim();
  detail::Arr<ad::D2> xs{}, ys{};
  for (int i = 0; i < n; ++i) {
    xs[i] = ad::variable2(x(i), i);
    ys[i] = ad::variable2(y(i), n + i);
  }
  ad::D2 F = detail::evaluate<ad::D2>(spec.data(), std::span<const ad::D2>(xs.data(), n),
                                      std::span<const ad::D2>(ys.data(), n));
  ad::D2 E = 0.5 * F * F;
  Mat g(n, n);
  Vec rhs(n);
  for (int l = 0; l < n; ++l) {
    for (int j = 0; j < n; ++j) g(l, j) = ad::hessian(E, n + l, n + j);
    double acc = -ad::gradient(E, l);
    for (int k = 0; k < n; ++k) acc += ad::hessian(E, k, n + l) * y(k);
    rhs(l) = acc;
  }
  g = 0.5 * (g + g.transpose()).eval();
  return 0.5 * g.ldlt().solve(rhs);
}

}  // namespace

Vec spray_coefficients_fd(const MetricSpec& spec, const Point& x, const TangentVector& y, const NumericConfig& cfg) {
  spec.require_domain(x);
  const int n = spec.dim();
  const double h = cfg.fd_step_nested;
  const double hy = cfg.fd_step_nested * y.norm();
  auto E = [&](const Vec& xx, const Vec& yy) {
    const double f = eval_metric_unchecked(spec, xx, yy);
    return 0.5 * f * f;
  };
  const Mat g = fundamental_tensor_fd(spec, x, y, cfg);
  Vec rhs(n);
  for (int l = 0; l < n; ++l) {
    Vec xp = x, xm = x;
    xp(l) += h;
    xm(l) -= h;
    double acc = -(E(xp, y) - E(xm, y)) / (2.0 * h);
    for (int k = 0; k < n; ++k) {
      Vec xkp = x, xkm = x, ylp = y, ylm = y;
      xkp(k) += h;
      xkm(k) -= h;
      ylp(l) += hy;
      ylm(l) -= hy;
      const double mixed = (E(xkp, ylp) - E(xkp, ylm) - E(xkm, ylp) + E(xkm, ylm)) / (4.0 * h * hy);
      acc += mixed * y(k);
    }
    rhs(l) = acc;
  }
  return 0.5 * g.ldlt().solve(rhs);
}

Vec spray_coefficients(const MetricSpec& spec, const Point& x, const TangentVector& y, const NumericConfig& cfg) {
  spec.require_domain(x);
  if (y.size() != spec.dim()) fail(ErrorCode::InvalidArgument, "tangent vector dimension mismatch");
  if (!(y.norm() > 0.0)) fail(ErrorCode::ZeroVector, "spray needs a nonzero vector");
  if (spec.is_minkowski()) return Vec::Zero(spec.dim());
  if (spec.differentiable() && 2 * spec.dim() <= ad::kMaxVars) return spray_ad(spec, x, y);
  return spray_coefficients_fd(spec, x, y, cfg);
}

GeodesicPath integrate_geodesic(const MetricSpec& spec, const Point& x0, const TangentVector& y0, double T,
                                const NumericConfig& cfg, bool record) {
  spec.require_domain(x0);
  if (!(y0.norm() > 0.0)) fail(ErrorCode::ZeroVector, "geodesic needs a nonzero initial velocity");
  if (!std::isfinite(T)) fail(ErrorCode::InvalidArgument, "geodesic time must be finite");
  const double F0 = eval_metric_unchecked(spec, x0, y0);
  const bool flat = spec.is_minkowski();
  auto accel = [&](const Vec& x, const Vec& v) -> Vec {
    if (flat) return Vec::Zero(x.size());
    return -2.0 * spray_coefficients(spec, x, v, cfg);
  };
  const double drift_tol = 1e-6 * std::max(1.0, std::abs(T)) * std::max(1.0, F0);
  GeodesicPath path;
  for (int attempt = 0; attempt < 5; ++attempt) {
    const double h0 = cfg.ode_step / std::pow(2.0, attempt);
    const long steps = std::max(1L, static_cast<long>(std::ceil(std::abs(T) / h0 - 1e-9)));
    const double h = T / static_cast<double>(steps);
    path = GeodesicPath{};
    path.step = h;
    path.speed = F0;
    Vec x = x0, v = y0;
    if (record) path.states.push_back({0.0, x, v});
    for (long k = 0; k < steps; ++k) {
      const Vec k1x = v;
      const Vec k1v = accel(x, v);
      const Vec x2 = x + 0.5 * h * k1x;
      if (!spec.in_domain(x2)) { path.exited_domain = true; break; }
      const Vec k2x = v + 0.5 * h * k1v;
      const Vec k2v = accel(x2, k2x);
      const Vec x3 = x + 0.5 * h * k2x;
      if (!spec.in_domain(x3)) { path.exited_domain = true; break; }
      const Vec k3x = v + 0.5 * h * k2v;
      const Vec k3v = accel(x3, k3x);
      const Vec x4 = x + h * k3x;
      if (!spec.in_domain(x4)) { path.exited_domain = true; break; }
      const Vec k4x = v + h * k3v;
      const Vec k4v = accel(x4, k4x);
      const Vec xn = x + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
      if (!spec.in_domain(xn)) { path.exited_domain = true; break; }
      v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      x = xn;
      const double Fk = eval_metric_unchecked(spec, x, v);
      path.max_speed_drift = std::max(path.max_speed_drift, std::abs(Fk - F0));
      if (record || k + 1 == steps) {
        if (!record) path.states.clear();
        path.states.push_back({h * static_cast<double>(k + 1), x, v});
      }
    }
    if (path.exited_domain || path.max_speed_drift <= drift_tol) break;
  }
  return path;
}

Point exp_map(const MetricSpec& spec, const Point& x0, const TangentVector& y, const NumericConfig& cfg) {
  if (spec.is_minkowski()) {
    spec.require_domain(x0);
    return x0 + y;
  }
  const GeodesicPath path = integrate_geodesic(spec, x0, y, 1.0, cfg, false);
  if (path.exited_domain) fail(ErrorCode::DomainViolation, "geodesic left the domain before t = 1");
  return path.states.back().x;
}

std::string to_csv(const GeodesicPath& path) {
  std::ostringstream os;
  os.precision(17);
  const int n = path.states.empty() ? 0 : static_cast<int>(path.states.front().x.size());
  os << "t";
  for (int i = 0; i < n; ++i) os << ",x" << i + 1;
  for (int i = 0; i < n; ++i) os << ",v" << i + 1;
  os << "\n";
  for (const auto& s : path.states) {
    os << s.t;
    for (int i = 0; i < n; ++i) os << "," << s.x(i);
    for (int i = 0; i < n; ++i) os << "," << s.v(i);
    os << "\n";
  }
  return os.str();
}

DistanceField distance_field(const MetricSpec& spec, const Point& x0) {
  spec.require_domain(x0);
  DistanceField d;
  d.base = x0;
  d.provenance = "closed_form";
  if (spec.is_minkowski()) {
    d.rho = [spec, x0](const Point& x) {
      const Vec v = x - x0;
      return v.norm() == 0.0 ? 0.0 : eval_metric_unchecked(spec, x0, v);
    };
    d.drho = [spec, x0](const Point& x) {
      const Vec v = x - x0;
      if (v.norm() == 0.0) fail(ErrorCode::Degenerate, "distance is not differentiable at its base point");
      return metric_gradient_y(spec, x0, v);
    };
    return d;
  }
  if (spec.family() == Family::Funk && x0.norm() == 0.0) {
    d.rho = [spec](const Point& x) {
      spec.require_domain(x);
      return -std::log1p(-x.norm());
    };
    d.drho = [spec](const Point& x) -> Covector {
      spec.require_domain(x);
      const double s = x.norm();
      if (s == 0.0) fail(ErrorCode::Degenerate, "distance is not differentiable at its base point");
      return x / (s * (1.0 - s));
    };
    return d;
  }
  fail(ErrorCode::Unsupported, "no closed-form distance for " + spec.name() + " at this base point");
}

DistanceField reverse_distance_field(const MetricSpec& spec, const Point& x0) {
  spec.require_domain(x0);
  DistanceField d;
  d.base = x0;
  d.reverse = true;
  d.provenance = "closed_form";
  if (spec.is_minkowski()) {
    d.rho = [spec, x0](const Point& x) {
      const Vec v = x0 - x;
      return v.norm() == 0.0 ? 0.0 : eval_metric_unchecked(spec, x0, v);
    };
    d.drho = [spec, x0](const Point& x) -> Covector {
      const Vec v = x0 - x;
      if (v.norm() == 0.0) fail(ErrorCode::Degenerate, "distance is not differentiable at its base point");
      return -metric_gradient_y(spec, x0, v);
    };
    return d;
  }
  if (spec.family() == Family::Funk && x0.norm() == 0.0) {
    d.rho = [spec](const Point& x) {
      spec.require_domain(x);
      return std::log1p(x.norm());
    };
    d.drho = [spec](const Point& x) -> Covector {
      spec.require_domain(x);
      const double s = x.norm();
      if (s == 0.0) fail(ErrorCode::Degenerate, "distance is not differentiable at its base point");
      return x / (s * (1.0 + s));
    };
    return d;
  }
  fail(ErrorCode::Unsupported, "no closed-form reverse distance for " + spec.name() + " at this base point");
}

TangentVector distance_gradient(const MetricSpec& spec, const DistanceField& rho, const Point& x,
                                const NumericConfig& cfg) {
  return legendre_inverse(spec, x, rho.differential(x), cfg);
}

double laplacian_of_distance(const MetricSpec& spec, const MeasureSpec& measure, const Point& x0, const Point& x,
                             const NumericConfig& cfg) {
  spec.require_domain(x);
  const double r = (x - x0).norm();
  if (r == 0.0) fail(ErrorCode::Degenerate, "Laplacian of distance is singular at the base point");
  const DistanceField rho = distance_field(spec, x0);
  auto W = [&](const Point& z) -> Vec {
    return density(measure, spec, z, cfg) * distance_gradient(spec, rho, z, cfg);
  };
  const int n = spec.dim();
  auto divergence = [&](double h) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      Point xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      acc += (W(xp)(i) - W(xm)(i)) / (2.0 * h);
    }
    return acc;
  };
  const double h = cfg.fd_step_nested * std::max(r, 1e-2) * 10.0;
  const double d1 = divergence(h);
  const double d2 = divergence(0.5 * h);
  return ((4.0 * d2 - d1) / 3.0) / density(measure, spec, x, cfg);
}

}  // namespace finsler
