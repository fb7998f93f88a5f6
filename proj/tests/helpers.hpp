#pragma once

#include "finsler/core.hpp"

#include <cmath>
#include <random>

namespace test {

using finsler::Mat;
using finsler::Vec;

inline Vec random_vec(std::mt19937_64& rng, int n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> U(lo, hi);
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v(i) = U(rng);
  } while (v.norm() < 0.05);
  return v;
}

inline Vec random_in_ball(std::mt19937_64& rng, int n, double r) {
  std::uniform_real_distribution<double> U(-r, r);
  Vec x(n);
  do {
    for (int i = 0; i < n; ++i) x(i) = U(rng);
  } while (x.norm() >= r);
  return x;
}

// Composite Simpson on [a, b] with an even number of panels.
template <class F>
double simpson(F f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

inline double funk_closed(const Vec& x, const Vec& y) {
  const double w = 1.0 - x.squaredNorm();
  const double xy = x.dot(y);
  return (std::sqrt(y.squaredNorm() * w + xy * xy) + xy) / w;
}

inline double mr_closed(double t, const Vec& y) { return y.norm() + t * y(1); }

}  // namespace test
