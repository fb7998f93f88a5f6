#pragma once

// Metric families, dual metric, fundamental tensor, Legendre transform,
// indicatrix sampling and reversibility.

#include "finsler/ad.hpp"
#include "finsler/core.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace finsler {

enum class Family { Euclidean, MinkowskiRanders, Funk, Randers, Navigation, Custom };

std::string_view to_string(Family family);

/// Largest dimension handled by the templated (differentiable) evaluation path.
inline constexpr int kMaxDim = 8;

/// Affine vector field V(x) = Qx + c.
struct WindField {
  enum class Kind { Zero, Rotation, Translation, Radial, Matrix };

  Kind kind = Kind::Zero;
  Mat Q;
  Vec c;

  static WindField zero(int n);
  /// Q must be skew-symmetric.
  static WindField rotation(const Mat& Q);
  static WindField translation(const Vec& c);
  static WindField radial(int n, double scale = 1.0);
  static WindField matrix(const Mat& Q, const Vec& c);

  int dim() const { return static_cast<int>(c.size()); }
  Vec operator()(const Point& x) const { return Q * x + c; }
  std::string name() const;
};

using CustomMetricFn = std::function<double(const Vec& x, const Vec& y)>;
using DomainFn = std::function<bool(const Vec& x)>;

namespace detail {
struct MetricData;
}

class MetricSpec {
 public:
  static MetricSpec euclidean(int n);
  /// F_t(y) = |y| + t y^2 on R^2, t in [0, 1).
  static MetricSpec minkowski_randers(double t);
  /// Funk metric on the unit ball of R^n.
  static MetricSpec funk(int n);
  /// Constant-coefficient Randers norm sqrt(y^T A y) + b.y.
  static MetricSpec randers(const Mat& A, const Vec& b);
  /// Metric solving F(x, y / s + V(x)) = 1 for s.
  static MetricSpec navigation(const MetricSpec& base, const WindField& wind);
  /// Double-only metric; derivatives fall back to finite differences.
  static MetricSpec custom(int n, CustomMetricFn F, DomainFn domain, std::string name);

  Family family() const;
  int dim() const;
  const std::string& name() const;
  double parameter_t() const;

  bool has_closed_dual() const;
  bool has_closed_distance() const;
  bool has_closed_density() const;
  /// True when F does not depend on x.
  bool is_minkowski() const;
  bool differentiable() const;

  bool in_domain(const Point& x) const;
  void require_domain(const Point& x) const;

  /// Checked evaluation: domain and nonzero y.
  double operator()(const Point& x, const TangentVector& y) const;

  const detail::MetricData& data() const { return *d_; }

 private:
  explicit MetricSpec(std::shared_ptr<const detail::MetricData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::MetricData> d_;
};

namespace detail {

struct MetricData {
  Family family = Family::Euclidean;
  int n = 2;
  std::string name;
  double t = 0.0;
  Mat A;
  Vec b;
  Mat A_dual;
  Vec b_dual;
  std::optional<MetricSpec> base;
  WindField wind;
  CustomMetricFn custom;
  DomainFn custom_domain;
};

/// Root s of F_base(x, y / s + V) = 1 in double precision.
double navigation_root(const MetricData& d, std::span<const double> x, std::span<const double> y,
                       double tol = 1e-14);

template <class T>
using Arr = std::array<T, kMaxDim>;

template <class T>
T evaluate(const MetricData& d, std::span<const T> x, std::span<const T> y);

template <class T>
T evaluate_randers(const Mat& A, const Vec& b, int n, std::span<const T> y) {
  T q = ad::lift<T>(0.0);
  T lin = ad::lift<T>(0.0);
  for (int i = 0; i < n; ++i) {
    T row = ad::lift<T>(0.0);
    for (int j = 0; j < n; ++j) row = row + A(i, j) * y[j];
    q = q + row * y[i];
    lin = lin + b(i) * y[i];
  }
  using std::sqrt;
  T alpha = sqrt(q);
  return alpha + lin;
}

template <class T>
T evaluate_funk(int n, std::span<const T> x, std::span<const T> y) {
  T r2 = ad::lift<T>(0.0);
  T xy = ad::lift<T>(0.0);
  T yy = ad::lift<T>(0.0);
  for (int i = 0; i < n; ++i) {
    r2 = r2 + x[i] * x[i];
    xy = xy + x[i] * y[i];
    yy = yy + y[i] * y[i];
  }
  using std::sqrt;
  T w = 1.0 - r2;
  T root = sqrt(yy * w + xy * xy);
  return (root + xy) / w;
}

template <class T>
T evaluate_navigation(const MetricData& d, std::span<const T> x, std::span<const T> y) {
  const int n = d.n;
  Arr<double> xv{}, yv{};
  for (int i = 0; i < n; ++i) {
    xv[i] = ad::value(x[i]);
    yv[i] = ad::value(y[i]);
  }
  const double s_star = navigation_root(d, std::span<const double>(xv.data(), n),
                                        std::span<const double>(yv.data(), n));
  if constexpr (std::is_same_v<T, double>) {
    return s_star;
  } else {
    const MetricData& bd = d.base->data();
    // Exact slope of h(s) = F(x, y/s + V) - 1 at the root.
    double slope;
    {
      Arr<ad::D1> xs{}, zs{};
      ad::D1 s = ad::variable1(s_star, 0);
      for (int i = 0; i < n; ++i) {
        double vi = d.wind.c(i);
        for (int j = 0; j < n; ++j) vi += d.wind.Q(i, j) * xv[j];
        xs[i] = ad::constant1(xv[i]);
        zs[i] = ad::constant1(yv[i]) / s + vi;
      }
      ad::D1 h = evaluate<ad::D1>(bd, std::span<const ad::D1>(xs.data(), n),
                                  std::span<const ad::D1>(zs.data(), n));
      slope = ad::gradient(h, 0);
    }
    Arr<T> V{};
    for (int i = 0; i < n; ++i) {
      V[i] = ad::lift<T>(d.wind.c(i));
      for (int j = 0; j < n; ++j) V[i] = V[i] + d.wind.Q(i, j) * x[j];
    }
    // Chord iteration with the exact slope: each pass fixes one more
    // derivative order of the implicit solution.
    T s = ad::lift<T>(s_star);
    for (int it = 0; it < 4; ++it) {
      Arr<T> z{};
      for (int i = 0; i < n; ++i) z[i] = y[i] / s + V[i];
      T h = evaluate<T>(bd, x, std::span<const T>(z.data(), n)) - 1.0;
      s = s - h / slope;
    }
    return s;
  }
}

template <class T>
T evaluate(const MetricData& d, std::span<const T> x, std::span<const T> y) {
  switch (d.family) {
    case Family::Euclidean: {
      using std::sqrt;
      T s = ad::lift<T>(0.0);
      for (int i = 0; i < d.n; ++i) s = s + y[i] * y[i];
      return sqrt(s);
    }
    case Family::MinkowskiRanders:
    case Family::Randers:
      return evaluate_randers<T>(d.A, d.b, d.n, y);
    case Family::Funk:
      return evaluate_funk<T>(d.n, x, y);
    case Family::Navigation:
      return evaluate_navigation<T>(d, x, y);
    case Family::Custom:
      if constexpr (std::is_same_v<T, double>) {
        Vec xv(d.n), yv(d.n);
        for (int i = 0; i < d.n; ++i) {
          xv(i) = x[i];
          yv(i) = y[i];
        }
        return d.custom(xv, yv);
      } else {
        fail(ErrorCode::Unsupported, "custom metrics are not differentiable");
      }
  }
  fail(ErrorCode::Unsupported, "unknown metric family");
}

}  // namespace detail

/// Unchecked evaluation for inner loops (caller guarantees domain and y != 0).
double eval_metric_unchecked(const MetricSpec& spec, const Point& x, const TangentVector& y);

/// F(x, y); throws DomainViolation or ZeroVector.
double eval_metric(const MetricSpec& spec, const Point& x, const TangentVector& y);

/// Gradient of F in y (the y-derivative, a covector). Exact for built-in families.
Covector metric_gradient_y(const MetricSpec& spec, const Point& x, const TangentVector& y,
                           const NumericConfig& cfg = {});

struct RandersCoefficients {
  Mat A;
  Vec b;
};

/// (A, b) with F = sqrt(y^T A y) + b.y at x, when the family is of Randers type.
std::optional<RandersCoefficients> randers_coefficients(const MetricSpec& spec, const Point& x);

/// ||b||^2 measured by A.
double randers_beta_sq(const RandersCoefficients& rc);

/// The dual of a Randers norm is again a Randers norm; these are its coefficients.
RandersCoefficients randers_dual_coefficients(const RandersCoefficients& rc);

double randers_dual(const RandersCoefficients& rc, const Covector& eta);

/// F*(x, eta); closed form where available, otherwise the numeric sup.
double eval_dual(const MetricSpec& spec, const Point& x, const Covector& eta,
                 const NumericConfig& cfg = {});

/// sup eta(y)/F(x,y) over the indicatrix, always by search.
double eval_dual_numeric(const MetricSpec& spec, const Point& x, const Covector& eta,
                         const NumericConfig& cfg = {});

/// g_ij = (1/2) d^2 F^2 / dy^i dy^j. Exact derivatives for built-in families.
Mat fundamental_tensor(const MetricSpec& spec, const Point& x, const TangentVector& y,
                       const NumericConfig& cfg = {});

/// Central second differences of F^2 with step fd_step_rel * |y|.
Mat fundamental_tensor_fd(const MetricSpec& spec, const Point& x, const TangentVector& y,
                          const NumericConfig& cfg = {});

Covector legendre(const MetricSpec& spec, const Point& x, const TangentVector& y,
                  const NumericConfig& cfg = {});

/// Solves legendre(y) = eta by damped Newton.
TangentVector legendre_inverse(const MetricSpec& spec, const Point& x, const Covector& eta,
                               const NumericConfig& cfg = {});

/// Samples of S_xM with the induced Riemannian measure.
struct Indicatrix {
  Point x;
  std::vector<TangentVector> samples;
  /// Quadrature weight of each sample for integrals against dnu_x.
  std::vector<double> weights;
};

Indicatrix build_indicatrix(const MetricSpec& spec, const Point& x, const NumericConfig& cfg = {});

double reversibility(const MetricSpec& spec, const Point& x, const NumericConfig& cfg = {});
double global_reversibility(const MetricSpec& spec, const std::vector<Point>& points,
                            const NumericConfig& cfg = {});
double dual_reversibility(const MetricSpec& spec, const Point& x, const NumericConfig& cfg = {});

/// Default base point of the metric's domain (origin).
Point origin(const MetricSpec& spec);

}  // namespace finsler
