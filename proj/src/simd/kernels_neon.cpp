#include "finsler/simd/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace finsler::simd {

namespace {

inline void neumaier2(float64x2_t& s, float64x2_t& c, float64x2_t v) {
  const float64x2_t t = vaddq_f64(s, v);
  const uint64x2_t big_s = vcgeq_f64(vabsq_f64(s), vabsq_f64(v));
  const float64x2_t a = vaddq_f64(vsubq_f64(s, t), v);
  const float64x2_t b = vaddq_f64(vsubq_f64(v, t), s);
  c = vaddq_f64(c, vbslq_f64(big_s, a, b));
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

double reduce(float64x2_t s, float64x2_t c, double ts, double tc) {
  double rs = 0.0, rc = 0.0;
  neumaier1(rs, rc, vgetq_lane_f64(s, 0));
  neumaier1(rs, rc, vgetq_lane_f64(s, 1));
  rc += vgetq_lane_f64(c, 0) + vgetq_lane_f64(c, 1);
  neumaier1(rs, rc, ts);
  rc += tc;
  return rs + rc;
}

void randers_norm(const double* A, const double* b, int n, const double* y, std::size_t m, double* out) {
  std::size_t k = 0;
  for (; k + 2 <= m; k += 2) {
    float64x2_t q = vdupq_n_f64(0.0);
    float64x2_t lin = vdupq_n_f64(0.0);
    for (int i = 0; i < n; ++i) {
      float64x2_t row = vdupq_n_f64(0.0);
      for (int j = 0; j < n; ++j) row = vfmaq_n_f64(row, vld1q_f64(y + j * m + k), A[i * n + j]);
      const float64x2_t yi = vld1q_f64(y + i * m + k);
      q = vfmaq_f64(q, row, yi);
      lin = vfmaq_n_f64(lin, yi, b[i]);
    }
    vst1q_f64(out + k, vaddq_f64(vsqrtq_f64(q), lin));
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
  for (; k + 2 <= m; k += 2) {
    float64x2_t q = vdupq_n_f64(0.0);
    for (int i = 0; i < n; ++i) {
      float64x2_t row = vdupq_n_f64(0.0);
      for (int j = 0; j < n; ++j) row = vfmaq_n_f64(row, vld1q_f64(y + j * m + k), A[i * n + j]);
      vst1q_f64(out + i * m + k, row);
      q = vfmaq_f64(q, row, vld1q_f64(y + i * m + k));
    }
    const float64x2_t inv = vdivq_f64(vdupq_n_f64(1.0), vsqrtq_f64(q));
    for (int i = 0; i < n; ++i) {
      vst1q_f64(out + i * m + k, vfmaq_f64(vdupq_n_f64(b[i]), vld1q_f64(out + i * m + k), inv));
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
  for (; k + 2 <= m; k += 2) {
    float64x2_t ee = vdupq_n_f64(0.0);
    float64x2_t xe = vdupq_n_f64(0.0);
    for (int i = 0; i < n; ++i) {
      const float64x2_t e = vld1q_f64(eta + i * m + k);
      ee = vfmaq_f64(ee, e, e);
      xe = vfmaq_f64(xe, vld1q_f64(x + i * m + k), e);
    }
    vst1q_f64(out + k, vsubq_f64(vsqrtq_f64(ee), xe));
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
  float64x2_t s = vdupq_n_f64(0.0), c = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= m; k += 2) neumaier2(s, c, vld1q_f64(v + k));
  double ts = 0.0, tc = 0.0;
  for (; k < m; ++k) neumaier1(ts, tc, v[k]);
  return reduce(s, c, ts, tc);
}

double compensated_dot(const double* a, const double* b, std::size_t m) {
  float64x2_t s = vdupq_n_f64(0.0), c = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= m; k += 2) {
    const float64x2_t va = vld1q_f64(a + k);
    const float64x2_t vb = vld1q_f64(b + k);
    const float64x2_t p = vmulq_f64(va, vb);
    const float64x2_t e = vfmaq_f64(vnegq_f64(p), va, vb);
    neumaier2(s, c, p);
    c = vaddq_f64(c, e);
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
  float64x2_t s = vdupq_n_f64(0.0), c = vdupq_n_f64(0.0);
  const float64x2_t th = vdupq_n_f64(threshold);
  std::size_t k = 0;
  for (; k + 2 <= m; k += 2) {
    const uint64x2_t mask = vcltq_f64(vld1q_f64(key + k), th);
    const float64x2_t v = vreinterpretq_f64_u64(vandq_u64(mask, vreinterpretq_u64_f64(vld1q_f64(values + k))));
    neumaier2(s, c, v);
  }
  double ts = 0.0, tc = 0.0;
  for (; k < m; ++k) {
    if (key[k] < threshold) neumaier1(ts, tc, values[k]);
  }
  return reduce(s, c, ts, tc);
}

}  // namespace

const KernelTable detail::kNeonTable{Isa::Neon,       randers_norm,    randers_gradient, funk_dual,
                                     compensated_sum, compensated_dot, masked_sum};

}  // namespace finsler::simd
