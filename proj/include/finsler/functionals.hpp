#pragma once

// Radial test functions, dual norms of their differentials, and the
// uncertainty quotients J^max, J, J^min, script-J and the Hardy quotient.

#include "finsler/geodesics.hpp"
#include "finsler/measures.hpp"
#include "finsler/metrics.hpp"
#include "finsler/quadrature.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace finsler {

/// u(x) = f(rho_{x0}(x)) for a closed-form profile f.
class TestFunction {
 public:
  enum class Kind { Gaussian, CknPower, FunkPower, HardyCutoff };

  /// f = exp(-C rho^2).
  static TestFunction gaussian(double C);
  /// f = (C + rho^(2-q))^(1/(2-p)); the shape exponents can be overridden.
  static TestFunction ckn_power(double C, double p, double q);
  static TestFunction ckn_shape(double C, double a, double b);
  /// f = -exp(-alpha rho).
  static TestFunction funk_power(double alpha);
  /// f = psi(rho) max(eps, rho)^(-gamma), psi a smoothstep from 1 on [0, r] to 0 past R.
  static TestFunction hardy_cutoff(double eps, double r, double R, double gamma);

  Kind kind() const { return kind_; }
  double f(double rho) const;
  double df(double rho) const;
  /// Radius beyond which u vanishes identically (infinity if none).
  double support() const;
  /// Points where f' may jump or change sign.
  std::vector<double> breakpoints() const;
  std::string name() const;
  const std::vector<double>& params() const { return params_; }

 private:
  TestFunction(Kind k, std::vector<double> p) : kind_(k), params_(std::move(p)) {}
  Kind kind_;
  std::vector<double> params_;
};

struct GradientNorms {
  double fplus = 0.0;   // F*(du)
  double fminus = 0.0;  // F*(-du)
  double fmax = 0.0;
  double fmin = 0.0;
  double fsel = 0.0;    // ||du||_{x0,F}
};

GradientNorms gradient_norms(const MetricSpec& spec, const Point& x0, const TestFunction& u, const Point& x,
                             const NumericConfig& cfg = {});

enum class FunctionalTag { Jmax, J, Jmin, ScriptJ, HardyQuotient };
std::string_view to_string(FunctionalTag tag);
FunctionalTag parse_functional_tag(std::string_view s);

enum class QuadratureScheme { Auto, MinkowskiPolar, Radial, CartesianGrid };
std::string_view to_string(QuadratureScheme s);
QuadratureScheme parse_scheme(std::string_view s);

struct FunctionalReport {
  FunctionalTag tag = FunctionalTag::J;
  QuadratureScheme scheme = QuadratureScheme::Auto;
  std::string metric, measure, test_function;
  double p = 2.0, q = 0.0;
  int n = 2;
  Integral grad, weight, mixed;
  double quotient = 0.0;
  double sharp = 0.0;
  double ratio_to_sharp = 0.0;
  /// Largest relative change of an integral when the resolution is doubled.
  double refinement_delta = 0.0;
  std::map<std::string, double> extras;
};

/// grad = integral of the chosen squared gradient norm, weight = integral of
/// |u|^(2p-2) rho^(2-2q), mixed = integral of |u|^p rho^(-q).
FunctionalReport evaluate_functional(FunctionalTag tag, const MetricSpec& spec, const MeasureSpec& measure,
                                     const Point& x0, const TestFunction& u, double p, double q,
                                     QuadratureScheme scheme = QuadratureScheme::Auto,
                                     const NumericConfig& cfg = {});

/// alpha^2 B(2 alpha + 1, n) / B(2 alpha + 3, n).
double funk_hardy_bound(int n, double alpha);

struct ScanResult {
  std::vector<double> parameters;
  std::vector<double> values;
  double best_value = 0.0;
  double best_parameter = 0.0;
  bool increasing = false;
  bool decreasing = false;
};

/// Evaluates the functional for make(parameter) over the grid.
ScanResult infimum_scan(FunctionalTag tag, const MetricSpec& spec, const MeasureSpec& measure, const Point& x0,
                        const std::function<TestFunction(double)>& make, double p, double q,
                        const std::vector<double>& grid, QuadratureScheme scheme = QuadratureScheme::Auto,
                        const NumericConfig& cfg = {});

}  // namespace finsler
