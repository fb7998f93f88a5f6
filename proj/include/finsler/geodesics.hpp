#pragma once

// Spray coefficients, geodesic integration, exponential map, closed-form
// distance functions and the Laplacian of a distance function.

#include "finsler/measures.hpp"
#include "finsler/metrics.hpp"

#include <functional>
#include <string>
#include <vector>

namespace finsler {

/// G^i(x, y) = (1/4) g^{il} ([F^2]_{x^k y^l} y^k - [F^2]_{x^l}).
Vec spray_coefficients(const MetricSpec& spec, const Point& x, const TangentVector& y, const NumericConfig& cfg = {});

/// Finite-difference spray, used for custom metrics and as a cross-check.
Vec spray_coefficients_fd(const MetricSpec& spec, const Point& x, const TangentVector& y,
                          const NumericConfig& cfg = {});

struct GeodesicState {
  double t = 0.0;
  Point x;
  TangentVector v;
};

struct GeodesicPath {
  std::vector<GeodesicState> states;
  double step = 0.0;
  double speed = 0.0;
  double max_speed_drift = 0.0;
  bool exited_domain = false;
};

/// RK4 for x'' + 2 G(x, x') = 0 over [0, T] (T may be negative). The step is
/// halved until the speed drift per unit time is below 1e-6.
GeodesicPath integrate_geodesic(const MetricSpec& spec, const Point& x0, const TangentVector& y0, double T,
                                const NumericConfig& cfg = {}, bool record = true);

/// exp_{x0}(y): the geodesic with initial velocity y evaluated at t = 1.
Point exp_map(const MetricSpec& spec, const Point& x0, const TangentVector& y, const NumericConfig& cfg = {});

std::string to_csv(const GeodesicPath& path);

struct DistanceField {
  Point base;
  bool reverse = false;
  std::string provenance;
  std::function<double(const Point&)> rho;
  std::function<Covector(const Point&)> drho;

  double operator()(const Point& x) const { return rho(x); }
  Covector differential(const Point& x) const { return drho(x); }
};

/// rho(x) = d(x0, x) in closed form.
DistanceField distance_field(const MetricSpec& spec, const Point& x0);

/// varrho(x) = d(x, x0) in closed form.
DistanceField reverse_distance_field(const MetricSpec& spec, const Point& x0);

/// Gradient vector field nabla rho = Legendre^{-1}(d rho).
TangentVector distance_gradient(const MetricSpec& spec, const DistanceField& rho, const Point& x,
                                const NumericConfig& cfg = {});

/// Delta rho = (1/sigma) div(sigma nabla rho) by central differences.
double laplacian_of_distance(const MetricSpec& spec, const MeasureSpec& measure, const Point& x0, const Point& x,
                             const NumericConfig& cfg = {});

}  // namespace finsler
