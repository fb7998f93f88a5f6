#include "finsler/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace finsler::simd {

namespace {

inline __m256d abs4(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline void neumaier4(__m256d& s, __m256d& c, __m256d v) {
  const __m256d t = _mm256_add_pd(s, v);
  const __m256d big_s = _mm256_cmp_pd(abs4(s), abs4(v), _CMP_GE_OQ);
  const __m256d a = _mm256_add_pd(_mm256_sub_pd(s, t), v);
  const __m256d b = _mm256_add_pd(_mm256_sub_pd(v, t), s);
  c = _mm256_add_pd(c, _mm256_blendv_pd(b, a, big_s));
  s = t;
}

inline void neumaier1(double& s, double& c, double v) {
  const double t = s + v;
  if (std::abs(s) >= std::abs(v)) {
    c += (s - t) + v;
  } else {
    c += (v - t) + s;
  }
  s = t;
}

double reduce(__m256d s, __m256d c, double ts, double tc) {
  alignas(32) double sl[4], cl[4];
  _mm256_store_pd(sl, s);
  _mm256_store_pd(cl, c);
  double rs = 0.0, rc = 0.0;
  for (int l = 0; l < 4; ++l) {
    neumaier1(rs, rc, sl[l]);
    rc += cl[l];
  }
  neumaier1(rs, rc, ts);
  rc += tc;
  return rs + rc;
}

void randers_norm(const double* A, const double* b, int n, const double* y, std::size_t m, double* out) {
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    __m256d q = _mm256_setzero_pd();
    __m256d lin = _mm256_setzero_pd();
    for (int i = 0; i < n; ++i) {
      __m256d row = _mm256_setzero_pd();
      for (int j = 0; j < n; ++j) {
        row = _mm256_fmadd_pd(_mm256_set1_pd(A[i * n + j]), _mm256_loadu_pd(y + j * m + k), row);
      }
      const __m256d yi = _mm256_loadu_pd(y + i * m + k);
      q = _mm256_fmadd_pd(row, yi, q);
      lin = _mm256_fmadd_pd(_mm256_set1_pd(b[i]), yi, lin);
    }
    _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_sqrt_pd(q), lin));
  }
  for (; k < m; ++k) {
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
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    __m256d q = _mm256_setzero_pd();
    for (int i = 0; i < n; ++i) {
      __m256d row = _mm256_setzero_pd();
      for (int j = 0; j < n; ++j) {
        row = _mm256_fmadd_pd(_mm256_set1_pd(A[i * n + j]), _mm256_loadu_pd(y + j * m + k), row);
      }
      _mm256_storeu_pd(out + i * m + k, row);
      q = _mm256_fmadd_pd(row, _mm256_loadu_pd(y + i * m + k), q);
    }
    const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_sqrt_pd(q));
    for (int i = 0; i < n; ++i) {
      const __m256d r = _mm256_loadu_pd(out + i * m + k);
      _mm256_storeu_pd(out + i * m + k, _mm256_fmadd_pd(r, inv, _mm256_set1_pd(b[i])));
    }
  }
  for (; k < m; ++k) {
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
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    __m256d ee = _mm256_setzero_pd();
    __m256d xe = _mm256_setzero_pd();
    for (int i = 0; i < n; ++i) {
      const __m256d e = _mm256_loadu_pd(eta + i * m + k);
      ee = _mm256_fmadd_pd(e, e, ee);
      xe = _mm256_fmadd_pd(_mm256_loadu_pd(x + i * m + k), e, xe);
    }
    _mm256_storeu_pd(out + k, _mm256_sub_pd(_mm256_sqrt_pd(ee), xe));
  }
  for (; k < m; ++k) {
    double ee = 0.0, xe = 0.0;
    for (int i = 0; i < n; ++i) {
      ee = std::fma(eta[i * m + k], eta[i * m + k], ee);
      xe = std::fma(x[i * m + k], eta[i * m + k], xe);
    }
    out[k] = std::sqrt(ee) - xe;
  }
}

double compensated_sum(const double* v, std::size_t m) {
  __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) neumaier4(s, c, _mm256_loadu_pd(v + k));
  double ts = 0.0, tc = 0.0;
  for (; k < m; ++k) neumaier1(ts, tc, v[k]);
  return reduce(s, c, ts, tc);
}

double compensated_dot(const double* a, const double* b, std::size_t m) {
  __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    const __m256d va = _mm256_loadu_pd(a + k);
    const __m256d vb = _mm256_loadu_pd(b + k);
    const __m256d p = _mm256_mul_pd(va, vb);
    const __m256d e = _mm256_fmsub_pd(va, vb, p);
    neumaier4(s, c, p);
    c = _mm256_add_pd(c, e);
  }
  double ts = 0.0, tc = 0.0;
  for (; k < m; ++k) {
    const double p = a[k] * b[k];
    neumaier1(ts, tc, p);
    tc += std::fma(a[k], b[k], -p);
  }
  return reduce(s, c, ts, tc);
}

double masked_sum(const double* values, const double* key, double threshold, std::size_t m) {
  __m256d s = _mm256_setzero_pd(), c = _mm256_setzero_pd();
  const __m256d th = _mm256_set1_pd(threshold);
  std::size_t k = 0;
  for (; k + 4 <= m; k += 4) {
    const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(key + k), th, _CMP_LT_OQ);
    neumaier4(s, c, _mm256_and_pd(mask, _mm256_loadu_pd(values + k)));
  }
  double ts = 0.0, tc = 0.0;
  for (; k < m; ++k) {
    if (key[k] < threshold) neumaier1(ts, tc, values[k]);
  }
  return reduce(s, c, ts, tc);
}

}  // namespace

const KernelTable detail::kAvx2Table{Isa::Avx2,       randers_norm,    randers_gradient, funk_dual,
                                     compensated_sum, compensated_dot, masked_sum};

}  // namespace finsler::simd
