#include "finsler/core.hpp"

#include <cmath>
#include <numbers>

namespace finsler {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DomainViolation: return "domain_violation";
    case ErrorCode::ZeroVector: return "zero_vector";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::Parse: return "parse_error";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

void NumericConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ErrorCode::InvalidArgument, std::string(name) + " must be strictly positive");
    }
  };
  positive(fd_step_rel, "fd_step_rel");
  positive(fd_step_nested, "fd_step_nested");
  positive(quad_tol, "quad_tol");
  positive(ode_step, "ode_step");
  positive(root_tol, "root_tol");
  if (indicatrix_samples < 8) fail(ErrorCode::InvalidArgument, "indicatrix_samples must be >= 8");
}

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::HPW: return "HPW";
    case CaseTag::CKN: return "CKN";
    case CaseTag::Hardy: return "Hardy";
    case CaseTag::Invalid: return "Invalid";
  }
  return "Invalid";
}

CaseTag validate_dimension_condition(double p, double q, int n) {
  if (!std::isfinite(p) || !std::isfinite(q)) return CaseTag::Invalid;
  if (p == 2.0 && q == 0.0 && n >= 2) return CaseTag::HPW;
  if (p == 2.0 && q == 2.0 && n >= 3) return CaseTag::Hardy;
  if (0.0 < q && q < 2.0 && 2.0 < p) {
    // The upper end n = 2(p-q)/(p-2) is excluded.
    const double upper = 2.0 * (p - q) / (p - 2.0);
    if (2 < n && static_cast<double>(n) < upper) return CaseTag::CKN;
  }
  return CaseTag::Invalid;
}

double sharp_constant(double p, double q, int n) {
  if (validate_dimension_condition(p, q, n) == CaseTag::Invalid) {
    fail(ErrorCode::InvalidArgument, "(p, q, n) outside the admissible regimes");
  }
  const double d = static_cast<double>(n) - q;
  return d * d / (p * p);
}

double unit_ball_volume(int n) {
  const double half = 0.5 * n;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

}  // namespace finsler
