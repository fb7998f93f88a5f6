#include "finsler/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace finsler {

namespace {

GaussRule compute_gauss_legendre(int m) {
  Mat J = Mat::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = beta;
    J(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(J);
  GaussRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int k = 0; k < m; ++k) {
    rule.nodes[k] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    rule.weights[k] = 2.0 * v0 * v0;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "Gauss rule needs at least one node");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, compute_gauss_legendre(m)).first;
  return it->second;
}

Vec sphere_point(const Vec& angles) {
  const int n = static_cast<int>(angles.size()) + 1;
  Vec w(n);
  double prod = 1.0;
  for (int k = 0; k < n - 1; ++k) {
    w(k) = prod * std::cos(angles(k));
    prod *= std::sin(angles(k));
  }
  w(n - 1) = prod;
  return w;
}

Mat sphere_jacobian(const Vec& angles) {
  const int m = static_cast<int>(angles.size());
  const int n = m + 1;
  Mat J = Mat::Zero(n, m);
  // w_k = (prod_{l<k} sin a_l) cos a_k, w_{n-1} = prod_{l<n-1} sin a_l.
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < m; ++j) {
      if (j > k) continue;
      double v = 1.0;
      for (int l = 0; l < std::min(k, m); ++l) v *= (l == j) ? std::cos(angles(l)) : std::sin(angles(l));
      if (k < m) v *= (j == k) ? -std::sin(angles(k)) : std::cos(angles(k));
      J(k, j) = v;
    }
  }
  return J;
}

double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

SphereRule sphere_rule(int n, int samples) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "sphere rule needs n >= 2");
  SphereRule rule;
  rule.n = n;
  const double two_pi = 2.0 * std::numbers::pi;
  if (n == 2) {
    const int m = std::max(8, samples);
    for (int k = 0; k < m; ++k) {
      Vec a(1);
      a(0) = two_pi * k / m;
      rule.angles.push_back(a);
      rule.param_weights.push_back(two_pi / m);
    }
  } else {
    int np, na;
    if (n == 3) {
      np = std::max(8, samples / 4);
      na = std::max(8, samples / 2);
    } else {
      np = std::max(8, samples / 16);
      na = std::max(8, samples / 8);
    }
    const GaussRule& g = gauss_legendre(np);
    const int polar = n - 2;
    std::vector<int> idx(polar, 0);
    while (true) {
      for (int k = 0; k < na; ++k) {
        Vec a(n - 1);
        double pw = two_pi / na;
        for (int l = 0; l < polar; ++l) {
          a(l) = 0.5 * std::numbers::pi * (g.nodes[idx[l]] + 1.0);
          pw *= 0.5 * std::numbers::pi * g.weights[idx[l]];
        }
        a(n - 2) = two_pi * k / na;
        rule.angles.push_back(a);
        rule.param_weights.push_back(pw);
      }
      int l = 0;
      while (l < polar && ++idx[l] == np) idx[l++] = 0;
      if (l == polar) break;
    }
  }
  for (std::size_t k = 0; k < rule.angles.size(); ++k) {
    const Vec& a = rule.angles[k];
    rule.nodes.push_back(sphere_point(a));
    double jac = 1.0;
    for (int l = 0; l < n - 2; ++l) jac *= std::pow(std::sin(a(l)), n - 2 - l);
    rule.weights.push_back(rule.param_weights[k] * jac);
  }
  return rule;
}

SphereMax maximize_on_sphere(int n, const std::function<double(const Vec&)>& f, int samples) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (n == 2) {
    const int m = std::max(16, samples);
    int best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k) {
      const double th = two_pi * k / m;
      const double v = f(Vec{{std::cos(th), std::sin(th)}});
      if (v > best_v) {
        best_v = v;
        best = k;
      }
    }
    const double h = two_pi / m;
    auto neg = [&](double th) { return -f(Vec{{std::cos(th), std::sin(th)}}); };
    const double th0 = two_pi * best / m;
    auto r = boost::math::tools::brent_find_minima(neg, th0 - h, th0 + h,
                                                   std::numeric_limits<double>::digits);
    SphereMax out;
    out.value = -r.second;
    out.argmax = Vec{{std::cos(r.first), std::sin(r.first)}};
    if (best_v > out.value) {
      out.value = best_v;
      out.argmax = Vec{{std::cos(th0), std::sin(th0)}};
    }
    return out;
  }

  const SphereRule rule = sphere_rule(n, std::max(64, samples));
  std::size_t best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double v = f(rule.nodes[k]);
    if (v > best_v) {
      best_v = v;
      best = k;
    }
  }
  // Compass search on the angles. Poles are harmless: the map stays smooth
  // in the ambient space and the search only needs improving moves.
  Vec a = rule.angles[best];
  double step = std::numbers::pi / 8.0;
  while (step > 1e-10) {
    bool improved = false;
    for (int j = 0; j < n - 1; ++j) {
      for (double sgn : {1.0, -1.0}) {
        Vec trial = a;
        trial(j) += sgn * step;
        const double v = f(sphere_point(trial));
        if (v > best_v) {
          best_v = v;
          a = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return SphereMax{best_v, sphere_point(a)};
}

Integral integrate_1d(const std::function<double(double)>& f, double a, double b, double tol,
                      std::vector<double> breakpoints) {
  std::vector<double> cuts{a};
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double c : breakpoints) {
    if (c > cuts.back() && c < b) cuts.push_back(c);
  }
  cuts.push_back(b);
  Integral total;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double err = 0.0;
    double l1 = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, cuts[k], cuts[k + 1], 20, tol, &err, &l1);
    if (!std::isfinite(v)) fail(ErrorCode::NonConvergence, "1-D quadrature produced a non-finite value");
    total.value += v;
    total.error += err * std::max(1.0, std::abs(v));
  }
  return total;
}

}  // namespace finsler
