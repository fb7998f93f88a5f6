#include "finsler/navigation.hpp"

#include "finsler/curvature.hpp"
#include "finsler/geodesics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace finsler {

bool NavigationData::valid_at(const Point& x) const { return derived().in_domain(x); }

MetricSpec NavigationData::derived() const { return MetricSpec::navigation(base, wind); }

double navigate(const NavigationData& data, const Point& x, const TangentVector& y, const NumericConfig& cfg) {
  const MetricSpec nav = data.derived();
  nav.require_domain(x);
  if (y.size() != nav.dim()) fail(ErrorCode::InvalidArgument, "tangent vector dimension mismatch");
  if (!(y.norm() > 0.0)) fail(ErrorCode::ZeroVector, "navigation needs a nonzero vector");
  return detail::navigation_root(nav.data(), std::span<const double>(x.data(), x.size()),
                                 std::span<const double>(y.data(), y.size()), cfg.root_tol);
}

double navigation_residual(const NavigationData& data, const Point& x, const TangentVector& y, double Ftilde) {
  return std::abs(eval_metric_unchecked(data.base, x, y / Ftilde + data.wind(x)) - 1.0);
}

double zermelo_euclidean(const Vec& V, const TangentVector& y) {
  const double lam = 1.0 - V.squaredNorm();
  if (!(lam > 0.0)) fail(ErrorCode::DomainViolation, "wind must satisfy |V| < 1");
  const double vy = V.dot(y);
  return (std::sqrt(lam * y.squaredNorm() + vy * vy) + vy) / lam;
}

double fish_tank_closed_form(const Point& x, const TangentVector& y) {
  if (x.size() < 3 || y.size() != x.size()) fail(ErrorCode::InvalidArgument, "fish tank lives in R^n, n >= 3");
  const double d = 1.0 - x(0) * x(0) - x(1) * x(1);
  if (!(d > 0.0)) fail(ErrorCode::DomainViolation, "point outside the cylinder");
  const double w = -x(1) * y(0) + x(0) * y(1);
  return (std::sqrt(w * w + y.squaredNorm() * d) - w) / d;
}

NavigationData fish_tank(int n) {
  if (n < 3) fail(ErrorCode::InvalidArgument, "fish tank needs n >= 3");
  Mat Q = Mat::Zero(n, n);
  Q(0, 1) = 1.0;
  Q(1, 0) = -1.0;
  return NavigationData{MetricSpec::euclidean(n), WindField::rotation(Q)};
}

FlowMap wind_flow(const WindField& wind, const Point& x, double t) {
  const int n = static_cast<int>(x.size());
  Mat aug = Mat::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = t * wind.Q;
  aug.topRightCorner(n, 1) = t * wind.c;
  const Mat E = aug.exp();
  FlowMap f;
  f.differential = E.topLeftCorner(n, n);
  f.x = f.differential * x + E.topRightCorner(n, 1);
  return f;
}

KillingCheckReport killing_check(const NavigationData& data, const std::vector<double>& times,
                                 const std::vector<Point>& points, const std::vector<TangentVector>& vectors) {
  if (points.size() != vectors.size()) fail(ErrorCode::InvalidArgument, "points and vectors differ in count");
  KillingCheckReport rep;
  rep.times = times;
  rep.points = points;
  rep.vectors = vectors;
  for (double t : times) {
    for (std::size_t k = 0; k < points.size(); ++k) {
      const FlowMap f = wind_flow(data.wind, points[k], t);
      if (!data.base.in_domain(f.x)) fail(ErrorCode::DomainViolation, "flow leaves the domain");
      const double d = std::abs(eval_metric(data.base, f.x, f.differential * vectors[k]) -
                                eval_metric(data.base, points[k], vectors[k]));
      if (d > rep.max_defect) {
        rep.max_defect = d;
        rep.worst_time = t;
      }
    }
  }
  return rep;
}

TransferReport transfer_check(const NavigationData& data, const std::vector<Point>& points,
                              const std::vector<TangentVector>& vectors, const std::vector<TangentVector>& flags,
                              const NumericConfig& cfg) {
  if (points.size() != vectors.size() || points.size() != flags.size())
    fail(ErrorCode::InvalidArgument, "points, vectors and flags differ in count");
  const MetricSpec nav = data.derived();
  const MeasureSpec bh = MeasureSpec::busemann_hausdorff();
  TransferReport rep;
  for (std::size_t k = 0; k < points.size(); ++k) {
    TransferSample s;
    s.x = points[k];
    s.y = vectors[k];
    s.flag = flags[k];
    const Vec V = data.wind(s.x);
    const double Fnav = navigate(data, s.x, s.y, cfg);
    const TangentVector ytil = s.y - eval_metric(data.base, s.x, s.y) * V;
    const TangentVector yalt = s.y + Fnav * V;
    s.K_nav = flag_curvature(nav, s.x, s.y, s.flag, cfg);
    s.K_base = flag_curvature(data.base, s.x, ytil, s.flag, cfg);
    s.S_nav = s_curvature(nav, bh, s.x, s.y, cfg);
    s.S_base = s_curvature(data.base, bh, s.x, ytil, cfg);
    s.S_base_alt = s_curvature(data.base, bh, s.x, yalt, cfg);
    rep.max_K_defect = std::max(rep.max_K_defect, std::abs(s.K_nav - s.K_base));
    rep.max_S_defect = std::max(rep.max_S_defect, std::abs(s.S_nav - s.S_base));
    rep.max_S_defect_alt = std::max(rep.max_S_defect_alt, std::abs(s.S_nav - s.S_base_alt));
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

double bh_equality_defect(const NavigationData& data, const std::vector<Point>& points, const NumericConfig& cfg) {
  const MetricSpec nav = data.derived();
  const MeasureSpec bh = MeasureSpec::busemann_hausdorff();
  double worst = 0.0;
  for (const Point& x : points) {
    nav.require_domain(x);
    worst = std::max(worst, std::abs(density_numeric(bh, nav, x, cfg) - density_numeric(bh, data.base, x, cfg)));
  }
  return worst;
}

BerwaldWitness non_berwald_witness(const NavigationData& data, const std::vector<Point>& points,
                                   const std::vector<TangentVector>& vectors, const NumericConfig& cfg) {
  const MetricSpec nav = data.derived();
  BerwaldWitness w;
  const int n = nav.dim();
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Point& x = points[k];
    const Vec& y = vectors[k];
    const Vec Gy = spray_coefficients(nav, x, y, cfg);
    w.reflection_defect = std::max(w.reflection_defect, (spray_coefficients(nav, x, -y, cfg) - Gy).norm());
    // A second vector not parallel to y.
    Vec z = Vec::Unit(n, (k + 1) % n) * y.norm();
    if (std::abs(z.normalized().dot(y.normalized())) > 0.9) z = Vec::Unit(n, (k + 2) % n) * y.norm();
    const Vec par = spray_coefficients(nav, x, y + z, cfg) + spray_coefficients(nav, x, y - z, cfg) - 2.0 * Gy -
                    2.0 * spray_coefficients(nav, x, z, cfg);
    w.parallelogram_defect = std::max(w.parallelogram_defect, par.norm());
  }
  return w;
}

}  // namespace finsler
