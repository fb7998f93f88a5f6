#include "finsler/functionals.hpp"

#include "finsler/parallel.hpp"
#include "finsler/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace finsler {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

TestFunction TestFunction::gaussian(double C) {
  if (!(C > 0.0)) fail(ErrorCode::InvalidArgument, "Gaussian needs C > 0");
  return TestFunction(Kind::Gaussian, {C});
}

TestFunction TestFunction::ckn_power(double C, double p, double q) {
  if (p == 2.0) fail(ErrorCode::InvalidArgument, "power profile needs p != 2");
  return ckn_shape(C, 2.0 - q, 1.0 / (2.0 - p));
}

TestFunction TestFunction::ckn_shape(double C, double a, double b) {
  if (!(C > 0.0) || !(a > 0.0) || !std::isfinite(b)) fail(ErrorCode::InvalidArgument, "power profile needs C > 0, a > 0");
  return TestFunction(Kind::CknPower, {C, a, b});
}

TestFunction TestFunction::funk_power(double alpha) {
  if (!(alpha > 0.0)) fail(ErrorCode::InvalidArgument, "Funk power needs alpha > 0");
  return TestFunction(Kind::FunkPower, {alpha});
}

TestFunction TestFunction::hardy_cutoff(double eps, double r, double R, double gamma) {
  if (!(eps > 0.0 && eps < r && r < R)) fail(ErrorCode::InvalidArgument, "cutoff needs 0 < eps < r < R");
  return TestFunction(Kind::HardyCutoff, {eps, r, R, gamma});
}

double TestFunction::f(double rho) const {
  const auto& P = params_;
  switch (kind_) {
    case Kind::Gaussian:
      return std::exp(-P[0] * rho * rho);
    case Kind::CknPower:
      return std::pow(P[0] + std::pow(rho, P[1]), P[2]);
    case Kind::FunkPower:
      return -std::exp(-P[0] * rho);
    case Kind::HardyCutoff: {
      const double eps = P[0], r = P[1], R = P[2], g = P[3];
      if (rho >= R) return 0.0;
      double psi = 1.0;
      if (rho > r) {
        const double s = (rho - r) / (R - r);
        psi = 1.0 - 3.0 * s * s + 2.0 * s * s * s;
      }
      return psi * std::pow(std::max(eps, rho), -g);
    }
  }
  return 0.0;
}

double TestFunction::df(double rho) const {
  const auto& P = params_;
  switch (kind_) {
    case Kind::Gaussian:
      return -2.0 * P[0] * rho * std::exp(-P[0] * rho * rho);
    case Kind::CknPower: {
      const double C = P[0], a = P[1], b = P[2];
      if (rho == 0.0) return a == 1.0 ? b * std::pow(C, b - 1.0) : 0.0;
      return b * std::pow(C + std::pow(rho, a), b - 1.0) * a * std::pow(rho, a - 1.0);
    }
    case Kind::FunkPower:
      return P[0] * std::exp(-P[0] * rho);
    case Kind::HardyCutoff: {
      const double eps = P[0], r = P[1], R = P[2], g = P[3];
      if (rho >= R) return 0.0;
      double psi = 1.0, dpsi = 0.0;
      if (rho > r) {
        const double s = (rho - r) / (R - r);
        psi = 1.0 - 3.0 * s * s + 2.0 * s * s * s;
        dpsi = (-6.0 * s + 6.0 * s * s) / (R - r);
      }
      const double m = std::max(eps, rho);
      const double dm = rho > eps ? -g * std::pow(rho, -g - 1.0) : 0.0;
      return dpsi * std::pow(m, -g) + psi * dm;
    }
  }
  return 0.0;
}

double TestFunction::support() const { return kind_ == Kind::HardyCutoff ? params_[2] : kInf; }

std::vector<double> TestFunction::breakpoints() const {
  if (kind_ == Kind::HardyCutoff) return {params_[0], params_[1], params_[2]};
  if (kind_ == Kind::Gaussian) return {1.0 / std::sqrt(params_[0])};
  return {1.0};
}

std::string TestFunction::name() const {
  const auto& P = params_;
  switch (kind_) {
    case Kind::Gaussian:
      return "gaussian(C=" + fmt(P[0]) + ")";
    case Kind::CknPower:
      return "power(C=" + fmt(P[0]) + ",a=" + fmt(P[1]) + ",b=" + fmt(P[2]) + ")";
    case Kind::FunkPower:
      return "funk-power(alpha=" + fmt(P[0]) + ")";
    case Kind::HardyCutoff:
      return "hardy-cutoff(eps=" + fmt(P[0]) + ",r=" + fmt(P[1]) + ",R=" + fmt(P[2]) + ",gamma=" + fmt(P[3]) + ")";
  }
  return "";
}

std::string_view to_string(FunctionalTag tag) {
  switch (tag) {
    case FunctionalTag::Jmax: return "Jmax";
    case FunctionalTag::J: return "J";
    case FunctionalTag::Jmin: return "Jmin";
    case FunctionalTag::ScriptJ: return "ScriptJ";
    case FunctionalTag::HardyQuotient: return "HardyQuotient";
  }
  return "?";
}

FunctionalTag parse_functional_tag(std::string_view s) {
  for (auto t : {FunctionalTag::Jmax, FunctionalTag::J, FunctionalTag::Jmin, FunctionalTag::ScriptJ,
                 FunctionalTag::HardyQuotient}) {
    if (s == to_string(t)) return t;
  }
  if (s == "hardy") return FunctionalTag::HardyQuotient;
  fail(ErrorCode::Parse, "unknown functional tag '" + std::string(s) + "'");
}

std::string_view to_string(QuadratureScheme s) {
  switch (s) {
    case QuadratureScheme::Auto: return "auto";
    case QuadratureScheme::MinkowskiPolar: return "minkowski-polar";
    case QuadratureScheme::Radial: return "radial";
    case QuadratureScheme::CartesianGrid: return "grid";
  }
  return "?";
}

QuadratureScheme parse_scheme(std::string_view s) {
  for (auto v : {QuadratureScheme::Auto, QuadratureScheme::MinkowskiPolar, QuadratureScheme::Radial,
                 QuadratureScheme::CartesianGrid}) {
    if (s == to_string(v)) return v;
  }
  fail(ErrorCode::Parse, "unknown quadrature scheme '" + std::string(s) + "'");
}

namespace {

// Norms of du = fp * d rho given Fp = F*(d rho) and Fm = F*(-d rho).
GradientNorms norms_from(double fp, double Fp, double Fm) {
  GradientNorms g;
  const double a = std::abs(fp);
  g.fplus = a * (fp >= 0.0 ? Fp : Fm);
  g.fminus = a * (fp >= 0.0 ? Fm : Fp);
  g.fmax = std::max(g.fplus, g.fminus);
  g.fmin = std::min(g.fplus, g.fminus);
  // <du, grad rho> = fp F*(d rho)^2, so its sign is the sign of fp.
  if (fp > 0.0) g.fsel = g.fplus;
  else if (fp < 0.0) g.fsel = g.fminus;
  else g.fsel = 0.5 * (g.fplus + g.fminus);
  return g;
}

double grad_sq(FunctionalTag tag, const GradientNorms& g) {
  switch (tag) {
    case FunctionalTag::Jmax: return g.fmax * g.fmax;
    case FunctionalTag::Jmin: return g.fmin * g.fmin;
    case FunctionalTag::ScriptJ: return g.fsel * g.fsel;
    case FunctionalTag::J:
    case FunctionalTag::HardyQuotient: return g.fplus * g.fplus;
  }
  return 0.0;
}

struct Pieces {
  double grad, weight, mixed;
};

Pieces pointwise(FunctionalTag tag, const TestFunction& u, double p, double q, double rho, double Fp, double Fm) {
  const double f = std::abs(u.f(rho));
  const double g = grad_sq(tag, norms_from(u.df(rho), Fp, Fm));
  const double weight = f == 0.0 ? 0.0 : std::pow(f, 2.0 * p - 2.0) * std::pow(rho, 2.0 - 2.0 * q);
  const double mixed = f == 0.0 ? 0.0 : std::pow(f, p) * std::pow(rho, -q);
  return {g, weight, mixed};
}

bool funk_at_origin(const MetricSpec& spec, const Point& x0) {
  return spec.family() == Family::Funk && x0.norm() == 0.0;
}

bool radially_symmetric_measure(const MeasureSpec& m) {
  switch (m.kind()) {
    case MeasureKind::BusemannHausdorff:
    case MeasureKind::HolmesThompson:
      return true;
    case MeasureKind::Scaled:
      return radially_symmetric_measure(m.base());
    case MeasureKind::CustomDensity:
      return m.custom_constant();
  }
  return false;
}

struct Triple {
  Integral grad, weight, mixed;
};

double safe_rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

double max_rel(const Triple& a, const Triple& b) {
  return std::max({safe_rel(a.grad.value, b.grad.value), safe_rel(a.weight.value, b.weight.value),
                   safe_rel(a.mixed.value, b.mixed.value)});
}

// Minkowski metrics with constant density: x = x0 + (tau / F(w)) w splits every
// integral into an angular factor times a 1-D integral in tau = rho.
Triple minkowski_polar(FunctionalTag tag, const MetricSpec& spec, const MeasureSpec& measure, const Point& x0,
                       const TestFunction& u, double p, double q, int samples, double tol,
                       const NumericConfig& cfg) {
  const int n = spec.dim();
  const double sigma = density(measure, spec, x0, cfg);
  const SphereRule rule = sphere_rule(n, samples);
  const auto& K = simd::kernels();
  std::vector<double> w0(rule.nodes.size()), wplus(w0.size()), wminus(w0.size()), wmax(w0.size()),
      wmin(w0.size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Vec& w = rule.nodes[k];
    const double Fw = eval_metric_unchecked(spec, x0, w);
    const Covector dF = metric_gradient_y(spec, x0, w, cfg);
    const double ap = std::pow(eval_dual(spec, x0, dF, cfg), 2);
    const double am = std::pow(eval_dual(spec, x0, -dF, cfg), 2);
    const double jac = std::pow(Fw, -n) * rule.weights[k];
    w0[k] = jac;
    wplus[k] = jac * ap;
    wminus[k] = jac * am;
    wmax[k] = jac * std::max(ap, am);
    wmin[k] = jac * std::min(ap, am);
  }
  auto sum = [&](const std::vector<double>& v) { return K.compensated_sum(v.data(), v.size()); };
  const double W0 = sum(w0), Wp = sum(wplus), Wm = sum(wminus), Wmax = sum(wmax), Wmin = sum(wmin);

  const double top = u.support();
  const auto bps = u.breakpoints();
  const double nn = n - 1.0;
  auto radial = [&](const std::function<double(double)>& g) { return integrate_1d(g, 0.0, top, tol, bps); };
  const Integral Rpos = radial([&](double t) {
    const double d = u.df(t);
    return d > 0.0 ? d * d * std::pow(t, nn) : 0.0;
  });
  const Integral Rneg = radial([&](double t) {
    const double d = u.df(t);
    return d < 0.0 ? d * d * std::pow(t, nn) : 0.0;
  });
  const Integral Rw = radial([&](double t) {
    const double f = std::abs(u.f(t));
    return f == 0.0 ? 0.0 : std::pow(f, 2.0 * p - 2.0) * std::pow(t, 2.0 - 2.0 * q + nn);
  });
  const Integral Rm = radial([&](double t) {
    const double f = std::abs(u.f(t));
    return f == 0.0 ? 0.0 : std::pow(f, p) * std::pow(t, nn - q);
  });

  // Angular factors multiplying the radial pieces with f' > 0 and f' < 0.
  double Apos = 0.0, Aneg = 0.0;
  switch (tag) {
    case FunctionalTag::Jmax: Apos = Aneg = Wmax; break;
    case FunctionalTag::Jmin: Apos = Aneg = Wmin; break;
    case FunctionalTag::ScriptJ: Apos = Aneg = Wp; break;
    case FunctionalTag::J:
    case FunctionalTag::HardyQuotient: Apos = Wp; Aneg = Wm; break;
  }
  Triple t;
  t.grad = {sigma * (Apos * Rpos.value + Aneg * Rneg.value), sigma * (Apos * Rpos.error + Aneg * Rneg.error)};
  t.weight = {sigma * W0 * Rw.value, sigma * W0 * Rw.error};
  t.mixed = {sigma * W0 * Rm.value, sigma * W0 * Rm.error};
  return t;
}

// Radially symmetric configurations: Euclidean space, or the Funk ball around
// its center. Integrates in rho along one ray times |S^{n-1}|.
Triple radial_route(FunctionalTag tag, const MetricSpec& spec, const MeasureSpec& measure, const Point& x0,
                    const TestFunction& u, double p, double q, double tol, const NumericConfig& cfg) {
  const int n = spec.dim();
  const bool funk = spec.family() == Family::Funk;
  const DistanceField rho = distance_field(spec, x0);
  const double area = sphere_area(n);
  const Vec e1 = Vec::Unit(n, 0);
  auto piece = [&](double t, int which) {
    const double s = funk ? -std::expm1(-t) : t;
    const double jac = funk ? std::pow(s, n - 1) * std::exp(-t) : std::pow(t, n - 1);
    if (jac == 0.0) return 0.0;
    double Fp = 1.0, Fm = 1.0;
    Point x = x0 + s * e1;
    if (funk) {
      // On the ray: d rho = e1 / (1 - s) and F*(x, eta) = |eta| - <x, eta>.
      Fm = 2.0 * std::exp(t) - 1.0;
      // The density is smooth up to the boundary; sample it just inside.
      x = std::min(s, 1.0 - 1e-5) * e1;
    } else {
      const Covector d = rho.differential(x);
      Fp = eval_dual(spec, x, d, cfg);
      Fm = eval_dual(spec, x, -d, cfg);
    }
    const Pieces pc = pointwise(tag, u, p, q, t, Fp, Fm);
    const double val = which == 0 ? pc.grad : which == 1 ? pc.weight : pc.mixed;
    return val == 0.0 ? 0.0 : area * val * jac * density(measure, spec, x, cfg);
  };
  const double top = u.support();
  const auto bps = u.breakpoints();
  Triple t;
  t.grad = integrate_1d([&](double r) { return piece(r, 0); }, 0.0, top, tol, bps);
  t.weight = integrate_1d([&](double r) { return piece(r, 1); }, 0.0, top, tol, bps);
  t.mixed = integrate_1d([&](double r) { return piece(r, 2); }, 0.0, top, tol, bps);
  return t;
}

// Midpoint rule on a box centred at x0; the centre is a cell vertex, so the
// singular point is never sampled.
struct GridSetup {
  Vec half;
  std::optional<RandersCoefficients> rc, rc_dual;
  bool funk = false;
};

Triple grid_sum(FunctionalTag tag, const MetricSpec& spec, const MeasureSpec& measure, const Point& x0,
                const TestFunction& u, double p, double q, const GridSetup& gs, int cells, const NumericConfig& cfg) {
  const int n = spec.dim();
  const auto& K = simd::kernels();
  const Vec h = 2.0 * gs.half / cells;
  const double cell_vol = h.prod();
  const bool const_density = density_is_constant(measure, spec);
  const double sigma0 = const_density ? density(measure, spec, x0, cfg) : 0.0;
  const DistanceField rho = gs.rc || gs.funk ? DistanceField{} : distance_field(spec, x0);
  std::size_t rows = 1;
  for (int i = 1; i < n; ++i) rows *= static_cast<std::size_t>(cells);
  const std::size_t m = static_cast<std::size_t>(cells);

  std::array<double, 3> out{};
  for (int which = 0; which < 3; ++which) {
    out[which] = parallel_sum(rows, 8, [&](std::size_t lo, std::size_t hi) {
      std::vector<double> rel(n * m), grad(n * m), neg(n * m), r(m), Fp(m), Fm(m), vals(m), abs_pts(n * m);
      std::vector<double> partial;
      for (std::size_t row = lo; row < hi; ++row) {
        std::size_t rem = row;
        for (int i = 1; i < n; ++i) {
          const std::size_t idx = rem % m;
          rem /= m;
          const double c = -gs.half(i) + (static_cast<double>(idx) + 0.5) * h(i);
          for (std::size_t k = 0; k < m; ++k) rel[i * m + k] = c;
        }
        for (std::size_t k = 0; k < m; ++k) rel[k] = -gs.half(0) + (static_cast<double>(k) + 0.5) * h(0);
        for (int i = 0; i < n; ++i)
          for (std::size_t k = 0; k < m; ++k) abs_pts[i * m + k] = rel[i * m + k] + x0(i);
        std::vector<char> valid(m, 1);
        if (gs.rc) {
          Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> A = gs.rc->A, Ad = gs.rc_dual->A;
          K.randers_norm(A.data(), gs.rc->b.data(), n, rel.data(), m, r.data());
          K.randers_gradient(A.data(), gs.rc->b.data(), n, rel.data(), m, grad.data());
          const Vec bneg = -gs.rc_dual->b;
          K.randers_norm(Ad.data(), gs.rc_dual->b.data(), n, grad.data(), m, Fp.data());
          K.randers_norm(Ad.data(), bneg.data(), n, grad.data(), m, Fm.data());
        } else if (gs.funk) {
          for (std::size_t k = 0; k < m; ++k) {
            double s2 = 0.0;
            for (int i = 0; i < n; ++i) s2 += abs_pts[i * m + k] * abs_pts[i * m + k];
            const double s = std::sqrt(s2);
            if (!(s < 1.0 - 1e-12)) {
              valid[k] = 0;
              r[k] = 1.0;
              for (int i = 0; i < n; ++i) grad[i * m + k] = neg[i * m + k] = 0.0;
              continue;
            }
            r[k] = -std::log1p(-s);
            for (int i = 0; i < n; ++i) {
              grad[i * m + k] = abs_pts[i * m + k] / (s * (1.0 - s));
              neg[i * m + k] = -grad[i * m + k];
            }
          }
          K.funk_dual(abs_pts.data(), grad.data(), n, m, Fp.data());
          K.funk_dual(abs_pts.data(), neg.data(), n, m, Fm.data());
        } else {
          Vec x(n);
          for (std::size_t k = 0; k < m; ++k) {
            for (int i = 0; i < n; ++i) x(i) = abs_pts[i * m + k];
            if (!spec.in_domain(x)) {
              valid[k] = 0;
              continue;
            }
            r[k] = rho(x);
            const Covector d = rho.differential(x);
            Fp[k] = eval_dual(spec, x, d, cfg);
            Fm[k] = eval_dual(spec, x, -d, cfg);
          }
        }
        Vec x(n);
        for (std::size_t k = 0; k < m; ++k) {
          if (!valid[k]) {
            vals[k] = 0.0;
            continue;
          }
          const Pieces pc = pointwise(tag, u, p, q, r[k], Fp[k], Fm[k]);
          double v = which == 0 ? pc.grad : which == 1 ? pc.weight : pc.mixed;
          if (v != 0.0) {
            double sig = sigma0;
            if (!const_density) {
              for (int i = 0; i < n; ++i) x(i) = abs_pts[i * m + k];
              sig = density(measure, spec, x, cfg);
            }
            v *= sig;
          }
          vals[k] = v;
        }
        partial.push_back(K.compensated_sum(vals.data(), m));
      }
      return K.compensated_sum(partial.data(), partial.size());
    });
  }
  Triple t;
  t.grad = {out[0] * cell_vol, 0.0};
  t.weight = {out[1] * cell_vol, 0.0};
  t.mixed = {out[2] * cell_vol, 0.0};
  return t;
}

GridSetup grid_setup(const MetricSpec& spec, const Point& x0, const TestFunction& u, const NumericConfig& cfg) {
  const int n = spec.dim();
  GridSetup gs;
  gs.half = Vec(n);
  if (funk_at_origin(spec, x0)) {
    gs.funk = true;
    gs.half.setOnes();
    return gs;
  }
  if (!spec.is_minkowski()) fail(ErrorCode::Unsupported, "grid quadrature needs a closed-form distance");
  double reach = u.support();
  if (!std::isfinite(reach)) {
    if (u.kind() != TestFunction::Kind::Gaussian)
      fail(ErrorCode::Unsupported, "grid quadrature needs a compact or Gaussian profile");
    reach = std::sqrt(20.0 / u.params()[0]);
  }
  for (int i = 0; i < n; ++i) {
    const Vec e = Vec::Unit(n, i);
    gs.half(i) = reach * std::max(eval_dual(spec, x0, e, cfg), eval_dual(spec, x0, -e, cfg));
  }
  gs.rc = randers_coefficients(spec, x0);
  if (gs.rc) gs.rc_dual = randers_dual_coefficients(*gs.rc);
  return gs;
}

int default_cells(int n) {
  switch (n) {
    case 2: return 800;
    case 3: return 120;
    case 4: return 32;
    default: return 12;
  }
}

}  // namespace

GradientNorms gradient_norms(const MetricSpec& spec, const Point& x0, const TestFunction& u, const Point& x,
                             const NumericConfig& cfg) {
  spec.require_domain(x);
  if ((x - x0).norm() == 0.0) fail(ErrorCode::Degenerate, "gradient norms need x != x0");
  const DistanceField rho = distance_field(spec, x0);
  const Covector d = rho.differential(x);
  return norms_from(u.df(rho(x)), eval_dual(spec, x, d, cfg), eval_dual(spec, x, -d, cfg));
}

FunctionalReport evaluate_functional(FunctionalTag tag, const MetricSpec& spec, const MeasureSpec& measure,
                                     const Point& x0, const TestFunction& u, double p, double q,
                                     QuadratureScheme scheme, const NumericConfig& cfg) {
  cfg.validate();
  spec.require_domain(x0);
  const int n = spec.dim();
  const CaseTag ct = validate_dimension_condition(p, q, n);
  if (ct == CaseTag::Invalid) fail(ErrorCode::InvalidArgument, "(p, q, n) outside the admissible range");
  if (tag == FunctionalTag::HardyQuotient && ct != CaseTag::Hardy)
    fail(ErrorCode::InvalidArgument, "Hardy quotient needs p = q = 2 and n >= 3");

  if (scheme == QuadratureScheme::Auto) {
    if (spec.is_minkowski() && density_is_constant(measure, spec)) scheme = QuadratureScheme::MinkowskiPolar;
    else if ((spec.family() == Family::Euclidean || funk_at_origin(spec, x0)) && radially_symmetric_measure(measure))
      scheme = QuadratureScheme::Radial;
    else scheme = QuadratureScheme::CartesianGrid;
  }

  FunctionalReport rep;
  rep.tag = tag;
  rep.scheme = scheme;
  rep.metric = spec.name();
  rep.measure = measure.name();
  rep.test_function = u.name();
  rep.p = p;
  rep.q = q;
  rep.n = n;
  const double tol = cfg.quad_tol * 1e-3;
  Triple t;
  switch (scheme) {
    case QuadratureScheme::MinkowskiPolar: {
      if (!spec.is_minkowski() || !density_is_constant(measure, spec))
        fail(ErrorCode::Unsupported, "polar factorization needs a Minkowski metric with constant density");
      t = minkowski_polar(tag, spec, measure, x0, u, p, q, cfg.indicatrix_samples, tol, cfg);
      const Triple fine = minkowski_polar(tag, spec, measure, x0, u, p, q, 2 * cfg.indicatrix_samples, tol, cfg);
      rep.refinement_delta = max_rel(t, fine);
      break;
    }
    case QuadratureScheme::Radial: {
      const bool ok = (spec.family() == Family::Euclidean || funk_at_origin(spec, x0)) &&
                      radially_symmetric_measure(measure);
      if (!ok) fail(ErrorCode::Unsupported, "radial reduction needs a configuration symmetric about x0");
      t = radial_route(tag, spec, measure, x0, u, p, q, tol, cfg);
      const Triple fine = radial_route(tag, spec, measure, x0, u, p, q, tol * 1e-2, cfg);
      rep.refinement_delta = max_rel(t, fine);
      break;
    }
    case QuadratureScheme::CartesianGrid: {
      const GridSetup gs = grid_setup(spec, x0, u, cfg);
      const int cells = default_cells(n);
      const Triple coarse = grid_sum(tag, spec, measure, x0, u, p, q, gs, cells / 2, cfg);
      t = grid_sum(tag, spec, measure, x0, u, p, q, gs, cells, cfg);
      t.grad.error = std::abs(t.grad.value - coarse.grad.value);
      t.weight.error = std::abs(t.weight.value - coarse.weight.value);
      t.mixed.error = std::abs(t.mixed.value - coarse.mixed.value);
      rep.refinement_delta = max_rel(coarse, t);
      break;
    }
    case QuadratureScheme::Auto:
      break;
  }
  rep.grad = t.grad;
  rep.weight = t.weight;
  rep.mixed = t.mixed;
  if (!(t.mixed.value > 0.0) || !std::isfinite(t.grad.value) || !std::isfinite(t.weight.value))
    fail(ErrorCode::NonConvergence, "functional integrals are not finite for this configuration");
  rep.quotient = t.grad.value * t.weight.value / (t.mixed.value * t.mixed.value);
  rep.sharp = sharp_constant(p, q, n);
  rep.ratio_to_sharp = rep.quotient / rep.sharp;
  if (spec.is_minkowski()) rep.extras["L"] = integral_of_distortion(spec, measure, x0, cfg);
  return rep;
}

double funk_hardy_bound(int n, double alpha) {
  if (n < 3 || !(alpha > 0.0)) fail(ErrorCode::InvalidArgument, "bound needs n >= 3 and alpha > 0");
  auto lbeta = [](double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); };
  return alpha * alpha * std::exp(lbeta(2.0 * alpha + 1.0, n) - lbeta(2.0 * alpha + 3.0, n));
}

ScanResult infimum_scan(FunctionalTag tag, const MetricSpec& spec, const MeasureSpec& measure, const Point& x0,
                        const std::function<TestFunction(double)>& make, double p, double q,
                        const std::vector<double>& grid, QuadratureScheme scheme, const NumericConfig& cfg) {
  if (grid.empty()) fail(ErrorCode::InvalidArgument, "empty parameter grid");
  ScanResult s;
  s.parameters = grid;
  for (double a : grid) s.values.push_back(evaluate_functional(tag, spec, measure, x0, make(a), p, q, scheme, cfg).quotient);
  const auto it = std::min_element(s.values.begin(), s.values.end());
  s.best_value = *it;
  s.best_parameter = grid[static_cast<std::size_t>(it - s.values.begin())];
  s.increasing = s.decreasing = s.values.size() > 1;
  for (std::size_t k = 1; k < s.values.size(); ++k) {
    if (!(s.values[k] > s.values[k - 1])) s.increasing = false;
    if (!(s.values[k] < s.values[k - 1])) s.decreasing = false;
  }
  return s;
}

}  // namespace finsler
