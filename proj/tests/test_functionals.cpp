#include "finsler/functionals.hpp"
#include "finsler/geodesics.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace finsler;

TEST_CASE("test-function derivatives match central differences") {
  const std::vector<TestFunction> fs = {TestFunction::gaussian(0.7), TestFunction::ckn_power(1.0, 3.0, 1.0),
                                        TestFunction::ckn_shape(2.0, 1.3, -0.8), TestFunction::funk_power(0.3),
                                        TestFunction::hardy_cutoff(0.05, 0.5, 1.0, 0.5)};
  for (const auto& u : fs) {
    for (double r : {0.2, 0.7, 0.9, 1.7}) {
      const double h = 1e-6;
      const double fd = (u.f(r + h) - u.f(r - h)) / (2 * h);
      CHECK(u.df(r) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }
  const TestFunction hc = TestFunction::hardy_cutoff(0.05, 0.5, 1.0, 0.5);
  CHECK(hc.f(1.2) == 0.0);
  CHECK(hc.f(0.01) == doctest::Approx(std::pow(0.05, -0.5)));
  CHECK(hc.support() == 1.0);
}

TEST_CASE("gradient norms split by the sign of f'") {
  const MetricSpec mr = MetricSpec::minkowski_randers(0.5);
  const Vec o = Vec::Zero(2);
  const TestFunction u = TestFunction::gaussian(1.0);
  Vec x(2);
  x << 0.6, 0.2;
  const GradientNorms g = gradient_norms(mr, o, u, x);
  const double rho = test::mr_closed(0.5, x);
  const double fp = std::abs(u.df(rho));
  // f' < 0: du = f' d rho, so F*(du) = |f'| F*(-d rho) and F*(-du) = |f'|.
  const Vec drho = distance_field(mr, o).differential(x);
  CHECK(g.fminus == doctest::Approx(fp).epsilon(1e-12));
  CHECK(g.fplus == doctest::Approx(fp * eval_dual(mr, x, -drho)).epsilon(1e-12));
  CHECK(g.fmax == std::max(g.fplus, g.fminus));
  CHECK(g.fmin == std::min(g.fplus, g.fminus));
}

TEST_CASE("HPW quotient on Minkowski-Randers planes") {
  for (double t : {0.0, 0.3, 0.6}) {
    const MetricSpec mr = MetricSpec::minkowski_randers(t);
    const auto r = evaluate_functional(FunctionalTag::J, mr, MeasureSpec::busemann_hausdorff(), Vec::Zero(2),
                                       TestFunction::gaussian(1.0), 2.0, 0.0);
    const double s = std::sqrt(1 - t * t);
    CHECK(r.quotient == doctest::Approx((4 - 3 * s) / s).epsilon(1e-6));
    CHECK(r.sharp == 1.0);
    CHECK(r.scheme == QuadratureScheme::MinkowskiPolar);
  }
}

TEST_CASE("quadrature schemes agree") {
  const MetricSpec mr = MetricSpec::minkowski_randers(0.3);
  const auto bh = MeasureSpec::busemann_hausdorff();
  const TestFunction u = TestFunction::gaussian(1.0);
  const double polar = evaluate_functional(FunctionalTag::Jmax, mr, bh, Vec::Zero(2), u, 2, 0,
                                           QuadratureScheme::MinkowskiPolar).quotient;
  const double grid = evaluate_functional(FunctionalTag::Jmax, mr, bh, Vec::Zero(2), u, 2, 0,
                                          QuadratureScheme::CartesianGrid).quotient;
  CHECK(grid == doctest::Approx(polar).epsilon(1e-4));
  const MetricSpec e = MetricSpec::euclidean(3);
  const TestFunction c = TestFunction::ckn_power(1.0, 3.0, 1.0);
  const double radial = evaluate_functional(FunctionalTag::J, e, MeasureSpec::lebesgue(), Vec::Zero(3), c, 3, 1,
                                            QuadratureScheme::Radial).quotient;
  CHECK(radial == doctest::Approx(4.0 / 9.0).epsilon(1e-6));
}

TEST_CASE("functional argument validation") {
  const MetricSpec e = MetricSpec::euclidean(2);
  const auto leb = MeasureSpec::lebesgue();
  const TestFunction u = TestFunction::gaussian(1.0);
  CHECK_THROWS_AS(evaluate_functional(FunctionalTag::HardyQuotient, e, leb, Vec::Zero(2), u, 2, 2), Error);
  CHECK_THROWS_AS(evaluate_functional(FunctionalTag::J, e, leb, Vec::Zero(2), u, 1.5, 1), Error);
  CHECK_THROWS_AS(parse_functional_tag("nope"), Error);
  CHECK(parse_functional_tag("hardy") == FunctionalTag::HardyQuotient);
  CHECK(parse_scheme("grid") == QuadratureScheme::CartesianGrid);
}

TEST_CASE("Funk Hardy bound against a Beta-function oracle") {
  // alpha^2 B(2a+1, n) / B(2a+3, n) via tgamma.
  auto beta = [](double a, double b) { return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b); };
  for (int n : {3, 4, 5}) {
    for (double a : {1.0, 0.5, 0.1}) {
      const double oracle = a * a * beta(2 * a + 1, n) / beta(2 * a + 3, n);
      CHECK(funk_hardy_bound(n, a) == doctest::Approx(oracle).epsilon(1e-12));
    }
  }
  CHECK(funk_hardy_bound(3, 1.0) == doctest::Approx(3.5).epsilon(1e-14));
  CHECK_THROWS_AS(funk_hardy_bound(2, 1.0), Error);
  CHECK_THROWS_AS(funk_hardy_bound(3, 0.0), Error);
}

TEST_CASE("infimum scan reports monotonicity") {
  const MetricSpec e = MetricSpec::euclidean(3);
  const auto s = infimum_scan(
      FunctionalTag::HardyQuotient, e, MeasureSpec::lebesgue(), Vec::Zero(3),
      [](double eps) { return TestFunction::hardy_cutoff(eps, 0.5, 1.0, 0.5); }, 2, 2, {0.2, 0.1, 0.05},
      QuadratureScheme::Radial);
  CHECK(s.decreasing);
  CHECK(!s.increasing);
  CHECK(s.best_parameter == 0.05);
  for (double v : s.values) CHECK(v > 0.25);
}
