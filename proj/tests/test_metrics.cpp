#include "finsler/metrics.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace finsler;

TEST_CASE("Funk metric closed form") {
  const MetricSpec funk = MetricSpec::funk(3);
  Vec x(3), y(3);
  x << 0.5, 0, 0;
  y << 1, 0, 0;
  CHECK(funk(x, y) == doctest::Approx(2.0).epsilon(1e-15));
  y << -1, 0, 0;
  CHECK(funk(x, y) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(funk(Vec::Zero(3), y) == doctest::Approx(1.0));
}

TEST_CASE("domain and zero-vector errors") {
  const MetricSpec funk = MetricSpec::funk(2);
  Vec out(2);
  out << 1.0, 0.0;
  try {
    funk(out, Vec::Unit(2, 0));
    FAIL("expected DomainViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainViolation);
  }
  try {
    funk(Vec::Zero(2), Vec::Zero(2));
    FAIL("expected ZeroVector");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroVector);
  }
  CHECK_THROWS_AS(MetricSpec::minkowski_randers(1.0), Error);
}

TEST_CASE("Minkowski-Randers norm, dual and reversibility") {
  for (double t : {0.0, 0.3, 0.5}) {
    const MetricSpec mr = MetricSpec::minkowski_randers(t);
    const Vec o = Vec::Zero(2);
    Vec y(2);
    y << 0.3, -1.2;
    CHECK(mr(o, y) == doctest::Approx(test::mr_closed(t, y)));
    // Dual of |y| + t y2 is the Randers co-norm ((1-t^2)|eta|^2 + t^2 eta2^2)^(1/2) - t eta2) / (1-t^2).
    Vec eta(2);
    eta << 0.7, 0.4;
    const double s = 1.0 - t * t;
    const double dual = (std::sqrt(s * eta.squaredNorm() + t * t * eta(1) * eta(1)) - t * eta(1)) / s;
    CHECK(eval_dual(mr, o, eta) == doctest::Approx(dual).epsilon(1e-12));
    CHECK(eval_dual_numeric(mr, o, eta) == doctest::Approx(dual).epsilon(1e-9));
    CHECK(reversibility(mr, o) == doctest::Approx((1 + t) / (1 - t)).epsilon(1e-9));
  }
}

TEST_CASE("Funk dual against brute-force supremum") {
  std::mt19937_64 rng(7);
  const MetricSpec funk = MetricSpec::funk(2);
  for (int k = 0; k < 5; ++k) {
    const Vec x = test::random_in_ball(rng, 2, 0.8);
    const Vec eta = test::random_vec(rng, 2);
    double best = -1e300;
    for (int i = 0; i < 200000; ++i) {
      const double th = 2 * M_PI * i / 200000.0;
      Vec y(2);
      y << std::cos(th), std::sin(th);
      best = std::max(best, eta.dot(y) / test::funk_closed(x, y));
    }
    CHECK(eval_dual(funk, x, eta) == doctest::Approx(eta.norm() - x.dot(eta)).epsilon(1e-12));
    CHECK(best == doctest::Approx(eta.norm() - x.dot(eta)).epsilon(1e-8));
  }
}

TEST_CASE("fundamental tensor: automatic vs finite differences") {
  std::mt19937_64 rng(11);
  const std::vector<MetricSpec> specs = {MetricSpec::funk(3), MetricSpec::minkowski_randers(0.4),
                                         MetricSpec::euclidean(4)};
  for (const auto& spec : specs) {
    for (int k = 0; k < 4; ++k) {
      const Vec x = test::random_in_ball(rng, spec.dim(), 0.7);
      const Vec y = test::random_vec(rng, spec.dim());
      const Mat g = fundamental_tensor(spec, x, y);
      const Mat gfd = fundamental_tensor_fd(spec, x, y);
      CHECK((g - gfd).norm() < 1e-6 * g.norm());
      CHECK((g - g.transpose()).norm() < 1e-12);
      CHECK(Eigen::SelfAdjointEigenSolver<Mat>(g).eigenvalues().minCoeff() > 0);
    }
  }
}

TEST_CASE("custom metric uses the finite-difference path") {
  const MetricSpec c = MetricSpec::custom(
      2, [](const Vec&, const Vec& y) { return std::sqrt(2 * y(0) * y(0) + y(1) * y(1)); },
      [](const Vec&) { return true; }, "diag");
  Vec y(2);
  y << 1.0, 2.0;
  const Mat g = fundamental_tensor(c, Vec::Zero(2), y);
  CHECK(g(0, 0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(g(1, 1) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(g(0, 1)) < 1e-6);
}

TEST_CASE("Legendre transform round trip and Euler identity") {
  std::mt19937_64 rng(3);
  const MetricSpec funk = MetricSpec::funk(3);
  for (int k = 0; k < 5; ++k) {
    const Vec x = test::random_in_ball(rng, 3, 0.7);
    const Vec y = test::random_vec(rng, 3);
    const Vec L = legendre(funk, x, y);
    CHECK((legendre_inverse(funk, x, L) - y).norm() < 1e-9 * y.norm());
    const double F = funk(x, y);
    CHECK(L.dot(y) == doctest::Approx(F * F).epsilon(1e-12));
    CHECK(eval_dual(funk, x, L) == doctest::Approx(F).epsilon(1e-12));
  }
}

TEST_CASE("Randers dual coefficients invert") {
  Mat A(2, 2);
  A << 2.0, 0.3, 0.3, 1.0;
  Vec b(2);
  b << 0.2, -0.3;
  const MetricSpec r = MetricSpec::randers(A, b);
  const auto rc = randers_coefficients(r, Vec::Zero(2));
  REQUIRE(rc);
  CHECK(randers_beta_sq(*rc) < 1.0);
  Vec eta(2);
  eta << -0.4, 0.9;
  CHECK(randers_dual(*rc, eta) == doctest::Approx(eval_dual_numeric(r, Vec::Zero(2), eta)).epsilon(1e-9));
}

TEST_CASE("indicatrix samples lie on F = 1") {
  const MetricSpec funk = MetricSpec::funk(3);
  Vec x(3);
  x << 0.2, -0.1, 0.3;
  const Indicatrix ind = build_indicatrix(funk, x);
  REQUIRE(!ind.samples.empty());
  double worst = 0.0;
  for (const auto& y : ind.samples) worst = std::max(worst, std::abs(funk(x, y) - 1.0));
  CHECK(worst < 1e-12);
}
