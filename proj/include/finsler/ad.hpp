#pragma once

// Forward-mode automatic differentiation on top of Eigen's AutoDiffScalar.
// D1 carries a gradient, D2 a gradient of gradients (full Hessian).

#include <Eigen/Core>
#include <unsupported/Eigen/AutoDiff>

#include <span>

namespace finsler::ad {

inline constexpr int kMaxVars = 8;

using Grad = Eigen::Matrix<double, kMaxVars, 1>;
using D1 = Eigen::AutoDiffScalar<Grad>;
using D1Grad = Eigen::Matrix<D1, kMaxVars, 1>;
using D2 = Eigen::AutoDiffScalar<D1Grad>;

inline double value(double v) { return v; }
inline double value(const D1& v) { return v.value(); }
inline double value(const D2& v) { return v.value().value(); }

inline D1 constant1(double v) { return D1(v, Grad::Zero()); }

inline D1 variable1(double v, int i) {
  Grad g = Grad::Zero();
  g(i) = 1.0;
  return D1(v, g);
}

inline D2 constant2(double v) {
  D1Grad g;
  for (int k = 0; k < kMaxVars; ++k) g(k) = constant1(0.0);
  return D2(constant1(v), g);
}

inline D2 variable2(double v, int i) {
  D1Grad g;
  for (int k = 0; k < kMaxVars; ++k) g(k) = constant1(k == i ? 1.0 : 0.0);
  return D2(variable1(v, i), g);
}

/// Lifts a double into any of the scalar types used by templated metric code.
template <class T>
T lift(double v);
template <>
inline double lift<double>(double v) { return v; }
template <>
inline D1 lift<D1>(double v) { return constant1(v); }
template <>
inline D2 lift<D2>(double v) { return constant2(v); }

inline double gradient(const D1& v, int i) { return v.derivatives()(i); }
inline double gradient(const D2& v, int i) { return v.value().derivatives()(i); }
inline double hessian(const D2& v, int i, int j) { return v.derivatives()(i).derivatives()(j); }

}  // namespace finsler::ad
