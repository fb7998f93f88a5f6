#include "finsler/curvature.hpp"
#include "finsler/measures.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace finsler;

TEST_CASE("Minkowski metrics are flat with zero S-curvature") {
  const MetricSpec mr = MetricSpec::minkowski_randers(0.4);
  Vec x(2), y(2), v(2);
  x << 0.3, 0.1;
  y << 1.0, 0.5;
  v << -0.2, 1.0;
  CHECK(riemann_curvature(mr, x, y).norm() < 1e-12);
  CHECK(std::abs(flag_curvature(mr, x, y, v)) < 1e-12);
  CHECK(std::abs(s_curvature(mr, MeasureSpec::busemann_hausdorff(), x, y)) < 1e-10);
}

TEST_CASE("Funk: constant flag curvature -1/4 and S_BH = (n+1)F/2") {
  std::mt19937_64 rng(21);
  for (int n : {2, 3}) {
    const MetricSpec funk = MetricSpec::funk(n);
    for (int k = 0; k < 3; ++k) {
      const Vec x = test::random_in_ball(rng, n, 0.6);
      const Vec y = test::random_vec(rng, n);
      Vec v = test::random_vec(rng, n);
      if (std::abs(v.normalized().dot(y.normalized())) > 0.9) v = Vec::Unit(n, (y.cwiseAbs().maxCoeff() == std::abs(y(0))) ? 1 : 0);
      const double F = funk(x, y);
      CHECK(flag_curvature(funk, x, y, v) == doctest::Approx(-0.25).epsilon(2e-3));
      CHECK(ricci(funk, x, y) == doctest::Approx(-0.25 * (n - 1) * F * F).epsilon(2e-3));
      const auto bh = MeasureSpec::busemann_hausdorff();
      CHECK(s_curvature(funk, bh, x, y) == doctest::Approx(0.5 * (n + 1) * F).epsilon(1e-3));
      CHECK(s_curvature_chain(funk, bh, x, y) == doctest::Approx(0.5 * (n + 1) * F).epsilon(1e-3));
    }
  }
}

TEST_CASE("Poincare disk (finite-difference path) has K = -1") {
  const MetricSpec disk = MetricSpec::custom(
      2, [](const Vec& x, const Vec& y) { return 2.0 * y.norm() / (1.0 - x.squaredNorm()); },
      [](const Vec& x) { return x.norm() < 1.0; }, "poincare");
  Vec x(2), y(2), v(2);
  x << 0.2, -0.1;
  y << 1.0, 0.3;
  v << -0.3, 1.0;
  CHECK(flag_curvature(disk, x, y, v) == doctest::Approx(-1.0).epsilon(1e-4));
}

TEST_CASE("flag curvature rejects degenerate flags") {
  const MetricSpec funk = MetricSpec::funk(2);
  Vec y(2);
  y << 1.0, 0.0;
  CHECK_THROWS_AS(flag_curvature(funk, Vec::Zero(2), y, 2.0 * y), Error);
}

TEST_CASE("distortion of Euclidean metric with Lebesgue measure vanishes") {
  const MetricSpec e = MetricSpec::euclidean(3);
  Vec y(3);
  y << 0.2, 1.0, -0.4;
  CHECK(std::abs(distortion(e, MeasureSpec::lebesgue(), Vec::Zero(3), y)) < 1e-12);
}

TEST_CASE("Funk through the finite-difference path keeps K = -1/4") {
  const MetricSpec fk = MetricSpec::custom(
      3,
      [](const Vec& x, const Vec& y) { return test::funk_closed(x, y); },
      [](const Vec& x) { return x.norm() < 1.0; }, "funk-fd");
  std::mt19937_64 rng(31);
  for (int k = 0; k < 3; ++k) {
    const Vec x = test::random_in_ball(rng, 3, 0.6);
    Vec y = test::random_vec(rng, 3), v = test::random_vec(rng, 3);
    while (std::abs(v.normalized().dot(y.normalized())) > 0.9) v = test::random_vec(rng, 3);
    CHECK(flag_curvature(fk, x, y, v) == doctest::Approx(-0.25).epsilon(1e-3));
  }
}
