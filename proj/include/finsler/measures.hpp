#pragma once

// Busemann-Hausdorff and Holmes-Thompson densities, integral of distortion,
// forward-ball volumes, volume-ratio curves and polar densities.

#include "finsler/metrics.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace finsler {

enum class MeasureKind { BusemannHausdorff, HolmesThompson, Scaled, CustomDensity };

class MeasureSpec {
 public:
  static MeasureSpec busemann_hausdorff();
  static MeasureSpec holmes_thompson();
  /// C times the base measure, C > 0.
  static MeasureSpec scaled(const MeasureSpec& base, double C);
  /// sigma(x) dx; `constant` marks x-independent densities.
  static MeasureSpec custom(std::function<double(const Point&)> sigma, std::string name, bool constant = false);
  static MeasureSpec lebesgue();

  MeasureKind kind() const;
  double factor() const;
  const MeasureSpec& base() const;
  const std::string& name() const;
  bool custom_constant() const;
  double custom_density(const Point& x) const;

 private:
  struct Data;
  explicit MeasureSpec(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// sigma(x) with dm = sigma dx. Closed forms for Randers-type families,
/// sphere quadrature otherwise.
double density(const MeasureSpec& measure, const MetricSpec& spec, const Point& x, const NumericConfig& cfg = {});

/// BH/HT density by quadrature over the sphere, regardless of closed forms.
double density_numeric(const MeasureSpec& measure, const MetricSpec& spec, const Point& x,
                       const NumericConfig& cfg = {});

/// True when sigma does not depend on x for this metric.
bool density_is_constant(const MeasureSpec& measure, const MetricSpec& spec);

/// Lebesgue volume of the unit ball B_xM = {F(x, .) < 1}, by polar quadrature.
double ball_lebesgue(const MetricSpec& spec, const Point& x, const NumericConfig& cfg = {});

struct GridEstimate {
  double value = 0.0;
  double error = 0.0;
  int cells = 0;
};

/// Leb(B_xM) by indicator quadrature on a bounding box, two levels plus Richardson.
GridEstimate ball_lebesgue_grid(const MetricSpec& spec, const Point& x, int cells, const NumericConfig& cfg = {});

/// (1/n) integral over S_xM of exp(-tau) d nu_x, by quadrature on the indicatrix.
double integral_of_distortion(const MetricSpec& spec, const MeasureSpec& measure, const Point& x,
                              const NumericConfig& cfg = {});

/// sigma(x) Leb(B_xM): the same quantity through the unit-ball volume.
double integral_of_distortion_volume(const MetricSpec& spec, const MeasureSpec& measure, const Point& x,
                                     const NumericConfig& cfg = {});

/// m(B+_{x0}(r)) in polar coordinates around x0 using the closed distance.
double forward_ball_volume(const MetricSpec& spec, const MeasureSpec& measure, const Point& x0, double r,
                           const NumericConfig& cfg = {});

/// m(B+_{x0}(r)) by indicator quadrature of {rho < r} over a bounding box.
GridEstimate forward_ball_volume_grid(const MetricSpec& spec, const MeasureSpec& measure, const Point& x0,
                                      double r, int cells, const NumericConfig& cfg = {});

struct BallVolumeCurve {
  Point base;
  double distortion_integral = 0.0;
  std::vector<double> radii;
  std::vector<double> volumes;
  std::vector<double> ratios;
};

/// f(r) = m(B+(r)) / (L_m(x0) r^n).
BallVolumeCurve volume_ratio_curve(const MetricSpec& spec, const MeasureSpec& measure, const Point& x0,
                                   const std::vector<double>& radii, const NumericConfig& cfg = {});

std::string to_csv(const BallVolumeCurve& curve);

/// hat-sigma_{x0}(r, y) with dm = hat-sigma dr ^ d nu; y is normalized onto S_{x0}M.
double polar_density(const MetricSpec& spec, const MeasureSpec& measure, const Point& x0, double r,
                     const TangentVector& y, const NumericConfig& cfg = {});

}  // namespace finsler
