#include "finsler/measures.hpp"

#include "finsler/geodesics.hpp"
#include "finsler/parallel.hpp"
#include "finsler/quadrature.hpp"
#include "finsler/simd/kernels.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace finsler {

struct MeasureSpec::Data {
  MeasureKind kind = MeasureKind::BusemannHausdorff;
  double C = 1.0;
  std::optional<MeasureSpec> base;
  std::function<double(const Point&)> sigma;
  bool constant = false;
  std::string name;
};

MeasureSpec MeasureSpec::busemann_hausdorff() {
  auto d = std::make_shared<Data>();
  d->kind = MeasureKind::BusemannHausdorff;
  d->name = "busemann-hausdorff";
  return MeasureSpec(d);
}

MeasureSpec MeasureSpec::holmes_thompson() {
  auto d = std::make_shared<Data>();
  d->kind = MeasureKind::HolmesThompson;
  d->name = "holmes-thompson";
  return MeasureSpec(d);
}

MeasureSpec MeasureSpec::scaled(const MeasureSpec& base, double C) {
  if (!(C > 0.0) || !std::isfinite(C)) fail(ErrorCode::InvalidArgument, "scaled measure needs C > 0");
  auto d = std::make_shared<Data>();
  d->kind = MeasureKind::Scaled;
  d->C = C;
  d->base = base;
  std::ostringstream os;
  os << "scaled(" << base.name() << ", " << C << ")";
  d->name = os.str();
  return MeasureSpec(d);
}

MeasureSpec MeasureSpec::custom(std::function<double(const Point&)> sigma, std::string name, bool constant) {
  if (!sigma) fail(ErrorCode::InvalidArgument, "custom measure needs a density");
  auto d = std::make_shared<Data>();
  d->kind = MeasureKind::CustomDensity;
  d->sigma = std::move(sigma);
  d->constant = constant;
  d->name = std::move(name);
  return MeasureSpec(d);
}

MeasureSpec MeasureSpec::lebesgue() {
  return custom([](const Point&) { return 1.0; }, "lebesgue", true);
}

MeasureKind MeasureSpec::kind() const { return d_->kind; }
double MeasureSpec::factor() const { return d_->C; }
const MeasureSpec& MeasureSpec::base() const {
  if (!d_->base) fail(ErrorCode::InvalidArgument, "measure has no base");
  return *d_->base;
}
const std::string& MeasureSpec::name() const { return d_->name; }
bool MeasureSpec::custom_constant() const { return d_->constant; }
double MeasureSpec::custom_density(const Point& x) const { return d_->sigma(x); }

double ball_lebesgue(const MetricSpec& spec, const Point& x, const NumericConfig& cfg) {
  spec.require_domain(x);
  const int n = spec.dim();
  const SphereRule rule = sphere_rule(n, cfg.indicatrix_samples);
  std::vector<double> vals(rule.nodes.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    vals[k] = std::pow(eval_metric_unchecked(spec, x, rule.nodes[k]), -n) / n;
  }
  return simd::kernels().compensated_dot(vals.data(), rule.weights.data(), vals.size());
}

double density_numeric(const MeasureSpec& measure, const MetricSpec& spec, const Point& x, const NumericConfig& cfg) {
  spec.require_domain(x);
  const int n = spec.dim();
  switch (measure.kind()) {
    case MeasureKind::BusemannHausdorff:
      return unit_ball_volume(n) / ball_lebesgue(spec, x, cfg);
    case MeasureKind::HolmesThompson: {
      const SphereRule rule = sphere_rule(n, cfg.indicatrix_samples);
      std::vector<double> vals(rule.nodes.size());
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const Vec& w = rule.nodes[k];
        const double F = eval_metric_unchecked(spec, x, w);
        vals[k] = fundamental_tensor(spec, x, w, cfg).determinant() * std::pow(F, -n) / n;
      }
      return simd::kernels().compensated_dot(vals.data(), rule.weights.data(), vals.size()) / unit_ball_volume(n);
    }
    case MeasureKind::Scaled:
      return measure.factor() * density_numeric(measure.base(), spec, x, cfg);
    case MeasureKind::CustomDensity:
      return measure.custom_density(x);
  }
  fail(ErrorCode::Unsupported, "unknown measure kind");
}

double density(const MeasureSpec& measure, const MetricSpec& spec, const Point& x, const NumericConfig& cfg) {
  spec.require_domain(x);
  double sigma = 0.0;
  switch (measure.kind()) {
    case MeasureKind::BusemannHausdorff:
    case MeasureKind::HolmesThompson: {
      if (!spec.has_closed_density()) {
        sigma = density_numeric(measure, spec, x, cfg);
        break;
      }
      const auto rc = randers_coefficients(spec, x);
      const int n = spec.dim();
      const double sqrt_det = std::sqrt(rc->A.determinant());
      if (measure.kind() == MeasureKind::HolmesThompson) {
        sigma = sqrt_det;
      } else {
        sigma = std::pow(1.0 - randers_beta_sq(*rc), 0.5 * (n + 1)) * sqrt_det;
      }
      break;
    }
    case MeasureKind::Scaled:
      sigma = measure.factor() * density(measure.base(), spec, x, cfg);
      break;
    case MeasureKind::CustomDensity:
      sigma = measure.custom_density(x);
      break;
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) fail(ErrorCode::Degenerate, "measure density must be positive");
  return sigma;
}

bool density_is_constant(const MeasureSpec& measure, const MetricSpec& spec) {
  switch (measure.kind()) {
    case MeasureKind::BusemannHausdorff:
      return spec.is_minkowski() || spec.family() == Family::Funk;
    case MeasureKind::HolmesThompson:
      return spec.is_minkowski();
    case MeasureKind::Scaled:
      return density_is_constant(measure.base(), spec);
    case MeasureKind::CustomDensity:
      return measure.custom_constant();
  }
  return false;
}

namespace {

struct Box {
  Vec lo, hi;
};

// Midpoint-rule sum of weight(z) over cells with key(z) < threshold.
double indicator_sum(const Box& box, int cells, const std::function<void(const double*, std::size_t, double*, double*)>& eval,
                     int n) {
  // Cells are enumerated row by row: the first coordinate varies fastest.
  std::size_t rows = 1;
  for (int i = 1; i < n; ++i) rows *= static_cast<std::size_t>(cells);
  Vec h = (box.hi - box.lo) / cells;
  const double cell_vol = h.prod();
  const double total = parallel_sum(rows, 16, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> pts(static_cast<std::size_t>(n) * cells), key(cells), w(cells);
    double acc = 0.0;
    for (std::size_t r = lo; r < hi; ++r) {
      std::size_t rem = r;
      for (int i = 1; i < n; ++i) {
        const std::size_t idx = rem % cells;
        rem /= cells;
        const double c = box.lo(i) + (idx + 0.5) * h(i);
        for (int k = 0; k < cells; ++k) pts[i * cells + k] = c;
      }
      for (int k = 0; k < cells; ++k) pts[k] = box.lo(0) + (k + 0.5) * h(0);
      eval(pts.data(), cells, key.data(), w.data());
      acc += simd::kernels().masked_sum(w.data(), key.data(), 1.0, cells);
    }
    return acc;
  });
  return total * cell_vol;
}

// Fills key with F-values (to compare against 1) for SoA points relative to `center`.
std::function<void(const double*, std::size_t, double*, double*)> norm_evaluator(
    const MetricSpec& spec, const Point& x, const Point& center, double scale,
    const std::function<double(const Point&)>& weight) {
  const int n = spec.dim();
  const auto rc = spec.is_minkowski() ? randers_coefficients(spec, x) : std::nullopt;
  return [=](const double* pts, std::size_t m, double* key, double* w) {
    std::vector<double> rel(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i)
      for (std::size_t k = 0; k < m; ++k) rel[i * m + k] = pts[i * m + k] - center(i);
    if (rc) {
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> A = rc->A;
      simd::kernels().randers_norm(A.data(), rc->b.data(), n, rel.data(), m, key);
      for (std::size_t k = 0; k < m; ++k) key[k] /= scale;
    } else {
      Vec v(n);
      for (std::size_t k = 0; k < m; ++k) {
        for (int i = 0; i < n; ++i) v(i) = rel[i * m + k];
        key[k] = v.norm() == 0.0 ? 0.0 : eval_metric_unchecked(spec, x, v) / scale;
      }
    }
    Vec z(n);
    for (std::size_t k = 0; k < m; ++k) {
      for (int i = 0; i < n; ++i) z(i) = pts[i * m + k];
      w[k] = weight ? weight(z) : 1.0;
    }
  };
}

}  // namespace

GridEstimate ball_lebesgue_grid(const MetricSpec& spec, const Point& x, int cells, const NumericConfig& cfg) {
  spec.require_domain(x);
  if (cells < 4) fail(ErrorCode::InvalidArgument, "grid needs at least 4 cells per axis");
  const int n = spec.dim();
  Box box{Vec(n), Vec(n)};
  for (int i = 0; i < n; ++i) {
    const Vec e = Vec::Unit(n, i);
    box.hi(i) = eval_dual(spec, x, e, cfg);
    box.lo(i) = -eval_dual(spec, x, -e, cfg);
  }
  box.lo *= 1.0 + 1e-9;
  box.hi *= 1.0 + 1e-9;
  const auto eval = norm_evaluator(spec, x, Point::Zero(n), 1.0, nullptr);
  const double coarse = indicator_sum(box, cells, eval, n);
  const double fine = indicator_sum(box, 2 * cells, eval, n);
  return GridEstimate{fine, std::abs(fine - coarse), 2 * cells};
}

double integral_of_distortion(const MetricSpec& spec, const MeasureSpec& measure, const Point& x,
                              const NumericConfig& cfg) {
  const Indicatrix ind = build_indicatrix(spec, x, cfg);
  const double sigma = density(measure, spec, x, cfg);
  const int n = spec.dim();
  std::vector<double> vals(ind.samples.size());
  for (std::size_t k = 0; k < ind.samples.size(); ++k) {
    // exp(-tau) = sigma / sqrt(det g_y)
    vals[k] = sigma / std::sqrt(fundamental_tensor(spec, x, ind.samples[k], cfg).determinant());
  }
  return simd::kernels().compensated_dot(vals.data(), ind.weights.data(), vals.size()) / n;
}

double integral_of_distortion_volume(const MetricSpec& spec, const MeasureSpec& measure, const Point& x,
                                     const NumericConfig& cfg) {
  return density(measure, spec, x, cfg) * ball_lebesgue(spec, x, cfg);
}

namespace {

// Largest s with x0 + s w still inside the domain (capped for unbounded domains).
double ray_extent(const MetricSpec& spec, const Point& x0, const Vec& w) {
  double lo = 0.0, hi = 1.0;
  while (spec.in_domain(x0 + hi * w)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) return hi;
  }
  for (int k = 0; k < 80; ++k) {
    const double mid = 0.5 * (lo + hi);
    (spec.in_domain(x0 + mid * w) ? lo : hi) = mid;
  }
  return lo;
}

// Root s of rho(x0 + s w) = r along a ray; rho increases along rays from x0.
double ray_radius(const MetricSpec& spec, const DistanceField& rho, const Point& x0, const Vec& w, double r) {
  if (spec.is_minkowski()) return r / eval_metric_unchecked(spec, x0, w);
  const double smax = ray_extent(spec, x0, w);
  auto f = [&](double s) { return rho(x0 + s * w) - r; };
  if (f(smax) <= 0.0) return smax;
  std::uintmax_t iters = 200;
  auto res = boost::math::tools::toms748_solve(f, 0.0, smax, -r, f(smax), boost::math::tools::eps_tolerance<double>(52),
                                               iters);
  return 0.5 * (res.first + res.second);
}

}  // namespace

double forward_ball_volume(const MetricSpec& spec, const MeasureSpec& measure, const Point& x0, double r,
                           const NumericConfig& cfg) {
  if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "ball radius must be positive");
  const DistanceField rho = distance_field(spec, x0);
  const int n = spec.dim();
  const SphereRule rule = sphere_rule(n, cfg.indicatrix_samples);
  const bool constant = density_is_constant(measure, spec);
  const double sigma0 = constant ? density(measure, spec, x0, cfg) : 0.0;
  const GaussRule& g = gauss_legendre(24);
  std::vector<double> vals(rule.nodes.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Vec& w = rule.nodes[k];
    const double s = ray_radius(spec, rho, x0, w, r);
    if (constant) {
      vals[k] = sigma0 * std::pow(s, n) / n;
    } else {
      double acc = 0.0;
      for (std::size_t q = 0; q < g.nodes.size(); ++q) {
        const double u = 0.5 * s * (g.nodes[q] + 1.0);
        acc += 0.5 * s * g.weights[q] * density(measure, spec, x0 + u * w, cfg) * std::pow(u, n - 1);
      }
      vals[k] = acc;
    }
  }
  return simd::kernels().compensated_dot(vals.data(), rule.weights.data(), vals.size());
}

GridEstimate forward_ball_volume_grid(const MetricSpec& spec, const MeasureSpec& measure, const Point& x0, double r,
                                      int cells, const NumericConfig& cfg) {
  if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "ball radius must be positive");
  if (cells < 4) fail(ErrorCode::InvalidArgument, "grid needs at least 4 cells per axis");
  const DistanceField rho = distance_field(spec, x0);
  const int n = spec.dim();
  Box box{Vec(n), Vec(n)};
  if (spec.is_minkowski()) {
    for (int i = 0; i < n; ++i) {
      const Vec e = Vec::Unit(n, i);
      box.hi(i) = x0(i) + r * eval_dual(spec, x0, e, cfg) * (1.0 + 1e-9);
      box.lo(i) = x0(i) - r * eval_dual(spec, x0, -e, cfg) * (1.0 + 1e-9);
    }
  } else {
    const SphereRule rule = sphere_rule(n, 64);
    double reach = 0.0;
    for (const Vec& w : rule.nodes) reach = std::max(reach, ray_radius(spec, rho, x0, w, r));
    reach *= 1.05;
    box.lo = x0.array() - reach;
    box.hi = x0.array() + reach;
  }
  std::function<void(const double*, std::size_t, double*, double*)> eval;
  const bool constant = density_is_constant(measure, spec);
  const double sigma0 = constant ? density(measure, spec, x0, cfg) : 1.0;
  if (spec.is_minkowski()) {
    eval = norm_evaluator(spec, x0, x0, r, nullptr);
  } else {
    eval = [&, n](const double* pts, std::size_t m, double* key, double* w) {
      Vec z(n);
      for (std::size_t k = 0; k < m; ++k) {
        for (int i = 0; i < n; ++i) z(i) = pts[i * m + k];
        if (!spec.in_domain(z)) {
          key[k] = 2.0;
          w[k] = 0.0;
          continue;
        }
        key[k] = rho(z) / r;
        w[k] = constant ? 1.0 : density(measure, spec, z, cfg);
      }
    };
  }
  const double coarse = sigma0 * indicator_sum(box, cells, eval, n);
  const double fine = sigma0 * indicator_sum(box, 2 * cells, eval, n);
  return GridEstimate{fine, std::abs(fine - coarse), 2 * cells};
}

BallVolumeCurve volume_ratio_curve(const MetricSpec& spec, const MeasureSpec& measure, const Point& x0,
                                   const std::vector<double>& radii, const NumericConfig& cfg) {
  BallVolumeCurve curve;
  curve.base = x0;
  curve.distortion_integral = integral_of_distortion(spec, measure, x0, cfg);
  const int n = spec.dim();
  for (double r : radii) {
    const double v = forward_ball_volume(spec, measure, x0, r, cfg);
    curve.radii.push_back(r);
    curve.volumes.push_back(v);
    curve.ratios.push_back(v / (curve.distortion_integral * std::pow(r, n)));
  }
  return curve;
}

std::string to_csv(const BallVolumeCurve& curve) {
  std::ostringstream os;
  os.precision(17);
  os << "r,volume,f\n";
  for (std::size_t k = 0; k < curve.radii.size(); ++k) {
    os << curve.radii[k] << "," << curve.volumes[k] << "," << curve.ratios[k] << "\n";
  }
  return os.str();
}

double polar_density(const MetricSpec& spec, const MeasureSpec& measure, const Point& x0, double r,
                     const TangentVector& y, const NumericConfig& cfg) {
  if (!(r > 0.0)) fail(ErrorCode::InvalidArgument, "polar radius must be positive");
  const int n = spec.dim();
  const Vec w0 = y / y.norm();
  // Householder map sending the chart pole of the parametrization onto w0,
  // so the angle chart is regular at the direction of interest.
  const Vec e = Vec::Unit(n, n - 2);
  Mat P = Mat::Identity(n, n);
  const Vec u = e - w0;
  if (u.norm() > 1e-12) P -= 2.0 * u * u.transpose() / u.squaredNorm();
  Vec a0 = Vec::Constant(n - 1, 0.5 * std::numbers::pi);
  a0(n - 2) = 0.0;
  auto direction = [&](const Vec& a) -> Vec {
    const Vec w = P * sphere_point(a);
    return w / eval_metric_unchecked(spec, x0, w);
  };
  auto endpoint = [&](const Vec& a, Vec* velocity) -> Vec {
    const GeodesicPath path = integrate_geodesic(spec, x0, direction(a), r, cfg, false);
    if (path.exited_domain) fail(ErrorCode::DomainViolation, "geodesic left the domain within the polar radius");
    if (velocity) *velocity = path.states.back().v;
    return path.states.back().x;
  };
  Mat J(n, n);
  Vec vel;
  const Vec end = endpoint(a0, &vel);
  J.col(0) = vel;
  const double da = cfg.fd_step_rel * 10.0;
  for (int j = 0; j < n - 1; ++j) {
    Vec ap = a0, am = a0;
    ap(j) += da;
    am(j) -= da;
    J.col(j + 1) = (endpoint(ap, nullptr) - endpoint(am, nullptr)) / (2.0 * da);
  }
  // Induced measure density of the indicatrix parametrization at a0.
  const Vec w = P * sphere_point(a0);
  const double F = eval_metric_unchecked(spec, x0, w);
  const Covector dF = metric_gradient_y(spec, x0, w, cfg);
  const Mat Jw = P * sphere_jacobian(a0);
  Mat T(n, n - 1);
  for (int j = 0; j < n - 1; ++j) T.col(j) = Jw.col(j) / F - w * (dF.dot(Jw.col(j)) / (F * F));
  const Mat g = fundamental_tensor(spec, x0, w / F, cfg);
  const double nu = std::sqrt((T.transpose() * g * T).determinant());
  return density(measure, spec, end, cfg) * std::abs(J.determinant()) / nu;
}

}  // namespace finsler
