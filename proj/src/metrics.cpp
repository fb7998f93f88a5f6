#include "finsler/metrics.hpp"

#include "finsler/quadrature.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace finsler {

using detail::MetricData;

namespace {

constexpr double kFunkMargin = 1e-6;
constexpr double kWindMargin = 1e-9;

std::span<const double> as_span(const Vec& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

void check_dim(int n) {
  if (n < 2 || n > kMaxDim) {
    fail(ErrorCode::InvalidArgument, "dimension must lie in [2, " + std::to_string(kMaxDim) + "]");
  }
}

void check_vector(const MetricSpec& spec, const Vec& v, const char* what) {
  if (v.size() != spec.dim()) {
    fail(ErrorCode::InvalidArgument, std::string(what) + " has dimension " + std::to_string(v.size()) +
                                         ", expected " + std::to_string(spec.dim()));
  }
  if (!v.allFinite()) fail(ErrorCode::InvalidArgument, std::string(what) + " is not finite");
}

void check_nonzero(const Vec& v, const char* what) {
  if (!(v.norm() > 0.0)) fail(ErrorCode::ZeroVector, std::string(what) + " must be nonzero");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Euclidean: return "euclidean";
    case Family::MinkowskiRanders: return "minkowski-randers";
    case Family::Funk: return "funk";
    case Family::Randers: return "randers";
    case Family::Navigation: return "navigation";
    case Family::Custom: return "custom";
  }
  return "unknown";
}

WindField WindField::zero(int n) { return WindField{Kind::Zero, Mat::Zero(n, n), Vec::Zero(n)}; }

WindField WindField::rotation(const Mat& Q) {
  if (Q.rows() != Q.cols()) fail(ErrorCode::InvalidArgument, "rotation generator must be square");
  if ((Q + Q.transpose()).cwiseAbs().maxCoeff() > 1e-14) {
    fail(ErrorCode::InvalidArgument, "rotation generator must be skew-symmetric");
  }
  return WindField{Kind::Rotation, Q, Vec::Zero(Q.rows())};
}

WindField WindField::translation(const Vec& c) {
  return WindField{Kind::Translation, Mat::Zero(c.size(), c.size()), c};
}

WindField WindField::radial(int n, double scale) {
  return WindField{Kind::Radial, scale * Mat::Identity(n, n), Vec::Zero(n)};
}

WindField WindField::matrix(const Mat& Q, const Vec& c) {
  if (Q.rows() != Q.cols() || Q.rows() != c.size()) {
    fail(ErrorCode::InvalidArgument, "wind matrix and offset dimensions disagree");
  }
  return WindField{Kind::Matrix, Q, c};
}

std::string WindField::name() const {
  switch (kind) {
    case Kind::Zero: return "zero";
    case Kind::Rotation: return "rotation";
    case Kind::Translation: return "translation";
    case Kind::Radial: return "radial(" + fmt(Q(0, 0)) + ")";
    case Kind::Matrix: return "matrix";
  }
  return "wind";
}

MetricSpec MetricSpec::euclidean(int n) {
  check_dim(n);
  auto d = std::make_shared<MetricData>();
  d->family = Family::Euclidean;
  d->n = n;
  d->name = "euclidean(n=" + std::to_string(n) + ")";
  d->A = Mat::Identity(n, n);
  d->b = Vec::Zero(n);
  d->A_dual = d->A;
  d->b_dual = d->b;
  return MetricSpec(d);
}

MetricSpec MetricSpec::minkowski_randers(double t) {
  if (!(t >= 0.0 && t < 1.0)) fail(ErrorCode::InvalidArgument, "Minkowski-Randers needs t in [0, 1)");
  auto d = std::make_shared<MetricData>();
  d->family = Family::MinkowskiRanders;
  d->n = 2;
  d->t = t;
  d->name = "minkowski-randers(t=" + fmt(t) + ")";
  d->A = Mat::Identity(2, 2);
  d->b = Vec{{0.0, t}};
  const RandersCoefficients dual = randers_dual_coefficients({d->A, d->b});
  d->A_dual = dual.A;
  d->b_dual = dual.b;
  return MetricSpec(d);
}

MetricSpec MetricSpec::funk(int n) {
  check_dim(n);
  auto d = std::make_shared<MetricData>();
  d->family = Family::Funk;
  d->n = n;
  d->name = "funk(n=" + std::to_string(n) + ")";
  return MetricSpec(d);
}

MetricSpec MetricSpec::randers(const Mat& A, const Vec& b) {
  const int n = static_cast<int>(b.size());
  check_dim(n);
  if (A.rows() != n || A.cols() != n) fail(ErrorCode::InvalidArgument, "Randers A must be n x n");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, A.cwiseAbs().maxCoeff())) {
    fail(ErrorCode::InvalidArgument, "Randers A must be symmetric");
  }
  Eigen::LLT<Mat> llt(A);
  if (llt.info() != Eigen::Success) fail(ErrorCode::InvalidArgument, "Randers A must be positive definite");
  const double beta2 = b.dot(llt.solve(b));
  if (!(beta2 < 1.0)) fail(ErrorCode::InvalidArgument, "Randers needs ||b||_A < 1");
  auto d = std::make_shared<MetricData>();
  d->family = Family::Randers;
  d->n = n;
  d->name = "randers(n=" + std::to_string(n) + ", |b|=" + fmt(std::sqrt(beta2)) + ")";
  d->A = A;
  d->b = b;
  const RandersCoefficients dual = randers_dual_coefficients({A, b});
  d->A_dual = dual.A;
  d->b_dual = dual.b;
  return MetricSpec(d);
}

MetricSpec MetricSpec::navigation(const MetricSpec& base, const WindField& wind) {
  if (wind.dim() != base.dim() || wind.Q.rows() != base.dim()) {
    fail(ErrorCode::InvalidArgument, "wind dimension differs from base metric");
  }
  auto d = std::make_shared<MetricData>();
  d->family = Family::Navigation;
  d->n = base.dim();
  d->base = base;
  d->wind = wind;
  d->name = "navigation(" + base.name() + ", " + wind.name() + ")";
  return MetricSpec(d);
}

MetricSpec MetricSpec::custom(int n, CustomMetricFn F, DomainFn domain, std::string name) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "dimension must be >= 2");
  if (!F) fail(ErrorCode::InvalidArgument, "custom metric needs a callable");
  auto d = std::make_shared<MetricData>();
  d->family = Family::Custom;
  d->n = n;
  d->custom = std::move(F);
  d->custom_domain = std::move(domain);
  d->name = name.empty() ? "custom" : std::move(name);
  return MetricSpec(d);
}

Family MetricSpec::family() const { return d_->family; }
int MetricSpec::dim() const { return d_->n; }
const std::string& MetricSpec::name() const { return d_->name; }
double MetricSpec::parameter_t() const { return d_->t; }

bool MetricSpec::has_closed_dual() const {
  switch (d_->family) {
    case Family::Euclidean:
    case Family::MinkowskiRanders:
    case Family::Randers:
    case Family::Funk:
      return true;
    default:
      return false;
  }
}

bool MetricSpec::has_closed_distance() const { return has_closed_dual(); }
bool MetricSpec::has_closed_density() const { return has_closed_dual(); }

bool MetricSpec::is_minkowski() const {
  switch (d_->family) {
    case Family::Euclidean:
    case Family::MinkowskiRanders:
    case Family::Randers:
      return true;
    case Family::Navigation:
      return d_->base->is_minkowski() && d_->wind.Q.cwiseAbs().maxCoeff() == 0.0;
    default:
      return false;
  }
}

bool MetricSpec::differentiable() const {
  if (d_->family == Family::Custom) return false;
  if (d_->family == Family::Navigation) return d_->base->differentiable();
  return true;
}

bool MetricSpec::in_domain(const Point& x) const {
  if (x.size() != d_->n || !x.allFinite()) return false;
  switch (d_->family) {
    case Family::Funk:
      return x.norm() <= 1.0 - kFunkMargin;
    case Family::Navigation: {
      if (!d_->base->in_domain(x)) return false;
      const Vec V = d_->wind(x);
      if (V.norm() == 0.0) return true;
      return eval_metric_unchecked(*d_->base, x, V) < 1.0 - kWindMargin;
    }
    case Family::Custom:
      return d_->custom_domain ? d_->custom_domain(x) : true;
    default:
      return true;
  }
}

void MetricSpec::require_domain(const Point& x) const {
  if (x.size() != d_->n) {
    fail(ErrorCode::InvalidArgument, "point has dimension " + std::to_string(x.size()) + ", expected " +
                                         std::to_string(d_->n));
  }
  if (!in_domain(x)) fail(ErrorCode::DomainViolation, "point outside the domain of " + d_->name);
}

double MetricSpec::operator()(const Point& x, const TangentVector& y) const { return eval_metric(*this, x, y); }

double detail::navigation_root(const MetricData& d, std::span<const double> x, std::span<const double> y,
                               double tol) {
  const int n = d.n;
  const MetricData& bd = d.base->data();
  Arr<double> V{}, mV{};
  double vnorm = 0.0;
  for (int i = 0; i < n; ++i) {
    double vi = d.wind.c(i);
    for (int j = 0; j < n; ++j) vi += d.wind.Q(i, j) * x[j];
    V[i] = vi;
    mV[i] = -vi;
    vnorm += vi * vi;
  }
  const double Fy = evaluate<double>(bd, x, y);
  if (vnorm == 0.0) return Fy;
  const double FV = evaluate<double>(bd, x, std::span<const double>(V.data(), n));
  const double FmV = evaluate<double>(bd, x, std::span<const double>(mV.data(), n));
  if (!(FV < 1.0)) fail(ErrorCode::DomainViolation, "navigation needs F(V) < 1");
  auto h = [&](double s) {
    Arr<double> z{};
    for (int i = 0; i < n; ++i) z[i] = y[i] / s + V[i];
    return evaluate<double>(bd, x, std::span<const double>(z.data(), n)) - 1.0;
  };
  double lo = Fy / (1.0 + FmV);
  double hi = Fy / (1.0 - FV);
  if (hi - lo <= 1e-15 * hi) return 0.5 * (lo + hi);
  // Rounding can put the bracket ends on the wrong side by an ulp.
  double hlo = h(lo), hhi = h(hi);
  for (int k = 0; k < 60 && hlo < 0.0; ++k) hlo = h(lo *= 0.999);
  for (int k = 0; k < 60 && hhi > 0.0; ++k) hhi = h(hi *= 1.001);
  if (hlo < 0.0 || hhi > 0.0) fail(ErrorCode::NonConvergence, "navigation root is not bracketed");
  if (hlo == 0.0) return lo;
  if (hhi == 0.0) return hi;
  std::uintmax_t iters = 200;
  const int bits = std::max(20, std::min(52, static_cast<int>(-std::log2(std::max(tol, 1e-16)))));
  auto r = boost::math::tools::toms748_solve(h, lo, hi, hlo, hhi,
                                             boost::math::tools::eps_tolerance<double>(bits), iters);
  return 0.5 * (r.first + r.second);
}

double eval_metric_unchecked(const MetricSpec& spec, const Point& x, const TangentVector& y) {
  return detail::evaluate<double>(spec.data(), as_span(x), as_span(y));
}

double eval_metric(const MetricSpec& spec, const Point& x, const TangentVector& y) {
  spec.require_domain(x);
  check_vector(spec, y, "tangent vector");
  check_nonzero(y, "tangent vector");
  return eval_metric_unchecked(spec, x, y);
}

Covector metric_gradient_y(const MetricSpec& spec, const Point& x, const TangentVector& y,
                           const NumericConfig& cfg) {
  const int n = spec.dim();
  Covector g(n);
  if (spec.differentiable()) {
    detail::Arr<ad::D1> xs{}, ys{};
    for (int i = 0; i < n; ++i) {
      xs[i] = ad::constant1(x(i));
      ys[i] = ad::variable1(y(i), i);
    }
    ad::D1 F = detail::evaluate<ad::D1>(spec.data(), std::span<const ad::D1>(xs.data(), n),
                                        std::span<const ad::D1>(ys.data(), n));
    for (int i = 0; i < n; ++i) g(i) = ad::gradient(F, i);
    return g;
  }
  const double h = cfg.fd_step_rel * y.norm();
  for (int i = 0; i < n; ++i) {
    Vec yp = y, ym = y;
    yp(i) += h;
    ym(i) -= h;
    g(i) = (eval_metric_unchecked(spec, x, yp) - eval_metric_unchecked(spec, x, ym)) / (2.0 * h);
  }
  return g;
}

std::optional<RandersCoefficients> randers_coefficients(const MetricSpec& spec, const Point& x) {
  const MetricData& d = spec.data();
  const int n = d.n;
  switch (d.family) {
    case Family::Euclidean:
    case Family::MinkowskiRanders:
    case Family::Randers:
      return RandersCoefficients{d.A, d.b};
    case Family::Funk: {
      const double w = 1.0 - x.squaredNorm();
      Mat A = (w * Mat::Identity(n, n) + x * x.transpose()) / (w * w);
      return RandersCoefficients{A, x / w};
    }
    case Family::Navigation: {
      auto base = randers_coefficients(*d.base, x);
      if (!base || base->b.cwiseAbs().maxCoeff() != 0.0) return std::nullopt;
      const Vec V = d.wind(x);
      const Vec AV = base->A * V;
      const double lam = 1.0 - V.dot(AV);
      Mat A = (lam * base->A + AV * AV.transpose()) / (lam * lam);
      return RandersCoefficients{A, AV / lam};
    }
    case Family::Custom:
      return std::nullopt;
  }
  return std::nullopt;
}

double randers_beta_sq(const RandersCoefficients& rc) { return rc.b.dot(rc.A.llt().solve(rc.b)); }

RandersCoefficients randers_dual_coefficients(const RandersCoefficients& rc) {
  const Mat Ainv = rc.A.inverse();
  const Vec w = Ainv * rc.b;
  const double beta2 = rc.b.dot(w);
  const double s = 1.0 - beta2;
  if (!(s > 0.0)) fail(ErrorCode::Degenerate, "Randers norm with ||b|| >= 1 has no dual");
  RandersCoefficients dual;
  dual.A = (s * Ainv + w * w.transpose()) / (s * s);
  dual.b = -w / s;
  return dual;
}

double randers_dual(const RandersCoefficients& rc, const Covector& eta) {
  const RandersCoefficients dual = randers_dual_coefficients(rc);
  return std::sqrt(eta.dot(dual.A * eta)) + dual.b.dot(eta);
}

double eval_dual_numeric(const MetricSpec& spec, const Point& x, const Covector& eta, const NumericConfig& cfg) {
  spec.require_domain(x);
  check_vector(spec, eta, "covector");
  check_nonzero(eta, "covector");
  auto ratio = [&](const Vec& w) { return eta.dot(w) / eval_metric_unchecked(spec, x, w); };
  const SphereMax m = maximize_on_sphere(spec.dim(), ratio, cfg.indicatrix_samples);
  if (!(m.value > 0.0) || !std::isfinite(m.value)) {
    fail(ErrorCode::NonConvergence, "dual norm search failed");
  }
  return m.value;
}

double eval_dual(const MetricSpec& spec, const Point& x, const Covector& eta, const NumericConfig& cfg) {
  const MetricData& d = spec.data();
  switch (d.family) {
    case Family::Euclidean:
      check_vector(spec, eta, "covector");
      check_nonzero(eta, "covector");
      return eta.norm();
    case Family::MinkowskiRanders:
    case Family::Randers:
      check_vector(spec, eta, "covector");
      check_nonzero(eta, "covector");
      return std::sqrt(eta.dot(d.A_dual * eta)) + d.b_dual.dot(eta);
    case Family::Funk:
      spec.require_domain(x);
      check_vector(spec, eta, "covector");
      check_nonzero(eta, "covector");
      return eta.norm() - x.dot(eta);
    case Family::Navigation:
      // F(x, y/F~ + V) = 1 makes the unit ball B - V, so the support function shifts by -eta(V).
      if (d.base->has_closed_dual()) {
        spec.require_domain(x);
        return eval_dual(*d.base, x, eta, cfg) - eta.dot(d.wind(x));
      }
      return eval_dual_numeric(spec, x, eta, cfg);
    default:
      return eval_dual_numeric(spec, x, eta, cfg);
  }
}

Mat fundamental_tensor_fd(const MetricSpec& spec, const Point& x, const TangentVector& y, const NumericConfig& cfg) {
  spec.require_domain(x);
  check_vector(spec, y, "tangent vector");
  check_nonzero(y, "tangent vector");
  const int n = spec.dim();
  const double h = cfg.fd_step_rel * y.norm();
  auto F2 = [&](const Vec& v) {
    const double f = eval_metric_unchecked(spec, x, v);
    return f * f;
  };
  Mat g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Vec pp = y, pm = y, mp = y, mm = y;
      pp(i) += h; pp(j) += h;
      pm(i) += h; pm(j) -= h;
      mp(i) -= h; mp(j) += h;
      mm(i) -= h; mm(j) -= h;
      g(i, j) = 0.5 * (F2(pp) - F2(pm) - F2(mp) + F2(mm)) / (4.0 * h * h);
      g(j, i) = g(i, j);
    }
  }
  return g;
}

Mat fundamental_tensor(const MetricSpec& spec, const Point& x, const TangentVector& y, const NumericConfig& cfg) {
  Mat g;
  if (spec.differentiable()) {
    spec.require_domain(x);
    check_vector(spec, y, "tangent vector");
    check_nonzero(y, "tangent vector");
    const int n = spec.dim();
    detail::Arr<ad::D2> xs{}, ys{};
    for (int i = 0; i < n; ++i) {
      xs[i] = ad::constant2(x(i));
      ys[i] = ad::variable2(y(i), i);
    }
    ad::D2 F = detail::evaluate<ad::D2>(spec.data(), std::span<const ad::D2>(xs.data(), n),
                                        std::span<const ad::D2>(ys.data(), n));
    ad::D2 E = 0.5 * F * F;
    g.resize(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = ad::hessian(E, i, j);
    g = 0.5 * (g + g.transpose()).eval();
  } else {
    g = fundamental_tensor_fd(spec, x, y, cfg);
  }
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success || !g.allFinite()) {
    fail(ErrorCode::Degenerate, "fundamental tensor is not positive definite");
  }
  return g;
}

Covector legendre(const MetricSpec& spec, const Point& x, const TangentVector& y, const NumericConfig& cfg) {
  return fundamental_tensor(spec, x, y, cfg) * y;
}

TangentVector legendre_inverse(const MetricSpec& spec, const Point& x, const Covector& eta, const NumericConfig& cfg) {
  spec.require_domain(x);
  check_vector(spec, eta, "covector");
  check_nonzero(eta, "covector");
  // Start on the Euclidean-dual direction, scaled to the right F-length.
  const double target = eval_dual(spec, x, eta, cfg);
  Vec y = eta * (target / eval_metric_unchecked(spec, x, eta));
  const double scale = eta.norm();
  auto residual = [&](const Vec& v, Mat* g) {
    Mat gv = fundamental_tensor(spec, x, v, cfg);
    Vec r = gv * v - eta;
    if (g) *g = std::move(gv);
    return r;
  };
  Mat g;
  Vec r = residual(y, &g);
  for (int it = 0; it < 100; ++it) {
    if (r.norm() <= cfg.root_tol * scale) return y;
    const Vec step = g.ldlt().solve(r);
    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k < 40; ++k) {
      Vec trial = y - lambda * step;
      if (trial.norm() > 0.0) {
        Mat gt;
        Vec rt;
        try {
          rt = residual(trial, &gt);
        } catch (const Error&) {
          lambda *= 0.5;
          continue;
        }
        if (rt.norm() < r.norm() || rt.norm() <= cfg.root_tol * scale) {
          y = trial;
          r = rt;
          g = gt;
          accepted = true;
          break;
        }
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
  }
  if (r.norm() <= 100.0 * cfg.root_tol * scale) return y;
  fail(ErrorCode::NonConvergence, "Legendre inverse did not converge, residual " + fmt(r.norm()));
}

Indicatrix build_indicatrix(const MetricSpec& spec, const Point& x, const NumericConfig& cfg) {
  spec.require_domain(x);
  const int n = spec.dim();
  const SphereRule rule = sphere_rule(n, cfg.indicatrix_samples);
  Indicatrix ind;
  ind.x = x;
  ind.samples.reserve(rule.nodes.size());
  ind.weights.reserve(rule.nodes.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Vec& w = rule.nodes[k];
    const double F = eval_metric_unchecked(spec, x, w);
    const Vec y = w / F;
    const Covector dF = metric_gradient_y(spec, x, w, cfg);
    const Mat J = sphere_jacobian(rule.angles[k]);
    Mat T(n, n - 1);
    for (int j = 0; j < n - 1; ++j) T.col(j) = J.col(j) / F - w * (dF.dot(J.col(j)) / (F * F));
    const Mat g = fundamental_tensor(spec, x, y, cfg);
    const Mat gram = T.transpose() * g * T;
    ind.samples.push_back(y);
    ind.weights.push_back(rule.param_weights[k] * std::sqrt(std::max(0.0, gram.determinant())));
  }
  return ind;
}

double reversibility(const MetricSpec& spec, const Point& x, const NumericConfig& cfg) {
  spec.require_domain(x);
  auto ratio = [&](const Vec& w) {
    return eval_metric_unchecked(spec, x, -w) / eval_metric_unchecked(spec, x, w);
  };
  return maximize_on_sphere(spec.dim(), ratio, cfg.indicatrix_samples).value;
}

double global_reversibility(const MetricSpec& spec, const std::vector<Point>& points, const NumericConfig& cfg) {
  if (points.empty()) fail(ErrorCode::InvalidArgument, "global reversibility needs sample points");
  double best = 0.0;
  for (const Point& p : points) best = std::max(best, reversibility(spec, p, cfg));
  return best;
}

double dual_reversibility(const MetricSpec& spec, const Point& x, const NumericConfig& cfg) {
  spec.require_domain(x);
  auto ratio = [&](const Vec& w) { return eval_dual(spec, x, -w, cfg) / eval_dual(spec, x, w, cfg); };
  return maximize_on_sphere(spec.dim(), ratio, cfg.indicatrix_samples).value;
}

Point origin(const MetricSpec& spec) { return Point::Zero(spec.dim()); }

}  // namespace finsler
