#pragma once

// Riemann curvature R^i_k, flag and Ricci curvature, distortion and S-curvature.

#include "finsler/measures.hpp"
#include "finsler/metrics.hpp"

#include <vector>

namespace finsler {

/// R^i_k(y) = 2 dG^i/dx^k - y^j d2G^i/dx^j dy^k + 2 G^j d2G^i/dy^j dy^k
///            - dG^i/dy^j dG^j/dy^k, by nested central differences of G.
Mat riemann_curvature(const MetricSpec& spec, const Point& x, const TangentVector& y, const NumericConfig& cfg = {});

/// g_y(R(v), v) / (g_y(y,y) g_y(v,v) - g_y(y,v)^2) given R and g_y.
double flag_curvature_from(const Mat& R, const Mat& g, const TangentVector& y, const TangentVector& v);

double flag_curvature(const MetricSpec& spec, const Point& x, const TangentVector& y, const TangentVector& v,
                      const NumericConfig& cfg = {});

/// F(y)^2 times the sum of flag curvatures over a g_y-orthonormal basis of y's complement.
double ricci(const MetricSpec& spec, const Point& x, const TangentVector& y, const NumericConfig& cfg = {});

struct CurvatureSample {
  Point x;
  TangentVector y;
  Mat R;
  std::vector<TangentVector> flags;
  std::vector<double> K;
  double ricci = 0.0;
};

CurvatureSample curvature_sample(const MetricSpec& spec, const Point& x, const TangentVector& y,
                                 const std::vector<TangentVector>& flags, const NumericConfig& cfg = {});

/// tau(y) = log(sqrt(det g_y) / sigma(x)).
double distortion(const MetricSpec& spec, const MeasureSpec& measure, const Point& x, const TangentVector& y,
                  const NumericConfig& cfg = {});

/// d/dt tau(gamma'(t)) at t = 0 along the geodesic with initial velocity y.
double s_curvature(const MetricSpec& spec, const MeasureSpec& measure, const Point& x, const TangentVector& y,
                   const NumericConfig& cfg = {});

/// Same quantity through the chain rule: tau_x . y - 2 G . tau_y.
double s_curvature_chain(const MetricSpec& spec, const MeasureSpec& measure, const Point& x, const TangentVector& y,
                         const NumericConfig& cfg = {});

struct SCurvatureSample {
  Point x;
  TangentVector y;
  double tau = 0.0;
  double S = 0.0;
  std::string measure;
};

SCurvatureSample s_curvature_sample(const MetricSpec& spec, const MeasureSpec& measure, const Point& x,
                                    const TangentVector& y, const NumericConfig& cfg = {});

}  // namespace finsler
