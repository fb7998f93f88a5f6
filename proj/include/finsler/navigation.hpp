#pragma once

// Zermelo navigation: F~ solves F(x, y / F~ + V) = 1. Checks for the
// navigation equation, Killing flows and curvature transfer.

#include "finsler/measures.hpp"
#include "finsler/metrics.hpp"

#include <string>
#include <vector>

namespace finsler {

struct NavigationData {
  MetricSpec base;
  WindField wind;

  /// F(x, V_x) < 1 - 1e-9 and x in the base domain.
  bool valid_at(const Point& x) const;
  /// The navigation metric as a MetricSpec usable by every other module.
  MetricSpec derived() const;
  /// Sign convention of the wind, recorded in reports.
  std::string convention() const { return "F(x, y/F~ + V) = 1"; }
};

/// F~(x, y) by bracketed root finding.
double navigate(const NavigationData& data, const Point& x, const TangentVector& y, const NumericConfig& cfg = {});

/// |F(x, y / F~ + V) - 1|.
double navigation_residual(const NavigationData& data, const Point& x, const TangentVector& y, double Ftilde);

/// Closed form for a Euclidean base: (sqrt((1-|V|^2)|y|^2 + <V,y>^2) + <V,y>) / (1 - |V|^2).
double zermelo_euclidean(const Vec& V, const TangentVector& y);

/// The fish-tank metric on the cylinder (x1)^2 + (x2)^2 < 1 written in coordinates.
double fish_tank_closed_form(const Point& x, const TangentVector& y);

/// The fish-tank data: Euclidean R^n with V(x) = (x2, -x1, 0, ...).
NavigationData fish_tank(int n);

struct FlowMap {
  Point x;
  Mat differential;
};

/// psi_t(x) for x' = Qx + c, via the exponential of [[Q, c], [0, 0]].
FlowMap wind_flow(const WindField& wind, const Point& x, double t);

struct KillingCheckReport {
  std::vector<double> times;
  std::vector<Point> points;
  std::vector<TangentVector> vectors;
  double max_defect = 0.0;
  double worst_time = 0.0;
};

/// max |F(psi_t x, dpsi_t y) - F(x, y)| over samples and flow times.
KillingCheckReport killing_check(const NavigationData& data, const std::vector<double>& times,
                                 const std::vector<Point>& points, const std::vector<TangentVector>& vectors);

struct TransferSample {
  Point x;
  TangentVector y, flag;
  double K_nav = 0.0;
  double K_base = 0.0;
  double S_nav = 0.0;
  /// Base S_BH at the shifted vector y - F(x,y) V and at the alternative y + F~(x,y) V.
  double S_base = 0.0;
  double S_base_alt = 0.0;
};

struct TransferReport {
  std::vector<TransferSample> samples;
  double max_K_defect = 0.0;
  double max_S_defect = 0.0;
  double max_S_defect_alt = 0.0;
};

/// Flag and S_BH curvature of F~ at (x, y) against those of F at the shifted vector.
TransferReport transfer_check(const NavigationData& data, const std::vector<Point>& points,
                              const std::vector<TangentVector>& vectors, const std::vector<TangentVector>& flags,
                              const NumericConfig& cfg = {});

/// max |sigma_BH(F~) - sigma_BH(F)| over the points, both by sphere quadrature.
double bh_equality_defect(const NavigationData& data, const std::vector<Point>& points, const NumericConfig& cfg = {});

struct BerwaldWitness {
  /// max |G(x, -y) - G(x, y)|; zero when G is quadratic in y.
  double reflection_defect = 0.0;
  /// max |G(y+z) + G(y-z) - 2G(y) - 2G(z)|; zero when G is quadratic in y.
  double parallelogram_defect = 0.0;
};

BerwaldWitness non_berwald_witness(const NavigationData& data, const std::vector<Point>& points,
                                   const std::vector<TangentVector>& vectors, const NumericConfig& cfg = {});

}  // namespace finsler
