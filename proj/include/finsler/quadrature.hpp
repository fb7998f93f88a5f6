#pragma once

// Quadrature building blocks: Gauss-Legendre nodes, product rules on the
// unit sphere S^{n-1}, maximization over the sphere, and adaptive 1-D
// integration with breakpoints.

#include "finsler/core.hpp"

#include <functional>
#include <vector>

namespace finsler {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// m-point Gauss-Legendre rule on [-1, 1] (Golub-Welsch).
const GaussRule& gauss_legendre(int m);

/// Hyperspherical angles (phi_1..phi_{n-2} in [0, pi], phi_{n-1} in [0, 2 pi)).
Vec sphere_point(const Vec& angles);
/// d omega / d angles, n x (n-1).
Mat sphere_jacobian(const Vec& angles);

/// Product rule over the angle box. `param_weights` integrate against d(angles);
/// `weights` already include the spherical Jacobian and sum to |S^{n-1}|.
struct SphereRule {
  int n = 0;
  std::vector<Vec> angles;
  std::vector<Vec> nodes;
  std::vector<double> param_weights;
  std::vector<double> weights;
};

/// `samples` sets the resolution: n = 2 uses `samples` trapezoid nodes; n = 3
/// uses samples/4 polar Gauss nodes times samples/2 azimuthal nodes.
SphereRule sphere_rule(int n, int samples);

/// Surface area of S^{n-1}.
double sphere_area(int n);

struct SphereMax {
  double value = 0.0;
  Vec argmax;
};

/// Global scan over the sphere rule followed by local refinement
/// (Brent on the circle, compass search on angles for n >= 3).
SphereMax maximize_on_sphere(int n, const std::function<double(const Vec&)>& f, int samples);

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod over [a, b] split at the given breakpoints; b may be +inf.
Integral integrate_1d(const std::function<double(double)>& f, double a, double b, double tol,
                      std::vector<double> breakpoints = {});

}  // namespace finsler
