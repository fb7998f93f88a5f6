#include "finsler/simd/kernels.hpp"

#include <cmath>

namespace finsler::simd {

namespace {

inline void neumaier(double& s, double& c, double v) {
  const double t = s + v;
  if (std::abs(s) >= std::abs(v)) {
    c += (s - t) + v;
  } else {
    c += (v - t) + s;
  }
  s = t;
}

void randers_norm(const double* A, const double* b, int n, const double* y, std::size_t m, double* out) {
  for (std::size_t k = 0; k < m; ++k) {
    double q = 0.0, lin = 0.0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row = std::fma(A[i * n + j], y[j * m + k], row);
      q = std::fma(row, y[i * m + k], q);
      lin = std::fma(b[i], y[i * m + k], lin);
    }
    out[k] = std::sqrt(q) + lin;
  }
}

void randers_gradient(const double* A, const double* b, int n, const double* y, std::size_t m, double* out) {
  for (std::size_t k = 0; k < m; ++k) {
    double q = 0.0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row = std::fma(A[i * n + j], y[j * m + k], row);
      out[i * m + k] = row;
      q = std::fma(row, y[i * m + k], q);
    }
    const double inv = 1.0 / std::sqrt(q);
    for (int i = 0; i < n; ++i) out[i * m + k] = std::fma(out[i * m + k], inv, b[i]);
  }
}

void funk_dual(const double* x, const double* eta, int n, std::size_t m, double* out) {
  for (std::size_t k = 0; k < m; ++k) {
    double ee = 0.0, xe = 0.0;
    for (int i = 0; i < n; ++i) {
      ee = std::fma(eta[i * m + k], eta[i * m + k], ee);
      xe = std::fma(x[i * m + k], eta[i * m + k], xe);
    }
    out[k] = std::sqrt(ee) - xe;
  }
}

double compensated_sum(const double* v, std::size_t m) {
  double s = 0.0, c = 0.0;
  for (std::size_t k = 0; k < m; ++k) neumaier(s, c, v[k]);
  return s + c;
}

double compensated_dot(const double* a, const double* b, std::size_t m) {
  double s = 0.0, c = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double p = a[k] * b[k];
    const double e = std::fma(a[k], b[k], -p);
    neumaier(s, c, p);
    c += e;
  }
  return s + c;
}

double masked_sum(const double* values, const double* key, double threshold, std::size_t m) {
  double s = 0.0, c = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (key[k] < threshold) neumaier(s, c, values[k]);
  }
  return s + c;
}

}  // namespace

const KernelTable detail::kScalarTable{Isa::Scalar,    randers_norm,    randers_gradient, funk_dual,
                                       compensated_sum, compensated_dot, masked_sum};

}  // namespace finsler::simd
