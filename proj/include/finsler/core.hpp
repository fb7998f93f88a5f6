#pragma once

// Shared value types, numeric configuration and the error taxonomy.

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>

namespace finsler {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Chart coordinates on R^n or on the unit ball.
using Point = Vec;
/// Components of a tangent vector in the chart basis d/dx^i.
using TangentVector = Vec;
/// Components of a covector in the dual basis dx^i.
using Covector = Vec;

enum class ErrorCode {
  DomainViolation,
  ZeroVector,
  InvalidArgument,
  NonConvergence,
  Unsupported,
  Degenerate,
  Parse,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

struct NumericConfig {
  double fd_step_rel = 1e-5;     // first-order differences
  double fd_step_nested = 1e-4;  // second-level (nested) differences
  int indicatrix_samples = 256;
  double quad_tol = 1e-6;
  double ode_step = 1e-3;
  double root_tol = 1e-12;

  /// Throws InvalidArgument when a field violates its bound.
  void validate() const;
};

enum class CaseTag { HPW, CKN, Hardy, Invalid };

std::string_view to_string(CaseTag tag);

/// Classifies (p, q, n) into the admissible parameter regimes of the
/// uncertainty functionals. Total: every input maps to exactly one tag.
CaseTag validate_dimension_condition(double p, double q, int n);

/// (n - q)^2 / p^2; rejects parameters tagged Invalid.
double sharp_constant(double p, double q, int n);

/// Volume of the Euclidean unit ball in R^n.
double unit_ball_volume(int n);

}  // namespace finsler
