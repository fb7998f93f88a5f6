#include "finsler/curvature.hpp"
#include "finsler/measures.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <numbers>

using namespace finsler;
constexpr double kPi = std::numbers::pi;

TEST_CASE("Minkowski-Randers densities and integral of distortion") {
  for (double t : {0.0, 0.3, 0.5}) {
    const MetricSpec mr = MetricSpec::minkowski_randers(t);
    const Vec o = Vec::Zero(2);
    // Unit ball of |y| + t y2 is an ellipse with semi-axes 1/(1-t^2) and 1/sqrt(1-t^2).
    const double leb = kPi / std::pow(1 - t * t, 1.5);
    CHECK(ball_lebesgue(mr, o) == doctest::Approx(leb).epsilon(1e-9));
    CHECK(density(MeasureSpec::busemann_hausdorff(), mr, o) == doctest::Approx(kPi / leb).epsilon(1e-9));
    CHECK(density_numeric(MeasureSpec::busemann_hausdorff(), mr, o) == doctest::Approx(kPi / leb).epsilon(1e-8));
    CHECK(integral_of_distortion(mr, MeasureSpec::busemann_hausdorff(), o) == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(integral_of_distortion(mr, MeasureSpec::holmes_thompson(), o) == doctest::Approx(leb).epsilon(1e-9));
    const GridEstimate g = ball_lebesgue_grid(mr, o, 400);
    CHECK(g.value == doctest::Approx(leb).epsilon(1e-3));
  }
}

TEST_CASE("scaled measures scale the density") {
  const MetricSpec funk = MetricSpec::funk(3);
  Vec x(3);
  x << 0.1, 0.2, 0.0;
  const auto bh = MeasureSpec::busemann_hausdorff();
  CHECK(density(MeasureSpec::scaled(bh, 2.5), funk, x) == doctest::Approx(2.5 * density(bh, funk, x)));
  CHECK_THROWS_AS(MeasureSpec::scaled(bh, -1.0), Error);
}

TEST_CASE("Funk BH density is Lebesgue") {
  std::mt19937_64 rng(4);
  const MetricSpec funk = MetricSpec::funk(3);
  for (int k = 0; k < 3; ++k) {
    const Vec x = test::random_in_ball(rng, 3, 0.7);
    CHECK(density_numeric(MeasureSpec::busemann_hausdorff(), funk, x) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("forward ball volumes") {
  const MetricSpec mr = MetricSpec::minkowski_randers(0.5);
  const auto bh = MeasureSpec::busemann_hausdorff();
  for (double r : {0.5, 1.0, 2.0}) {
    CHECK(forward_ball_volume(mr, bh, Vec::Zero(2), r) == doctest::Approx(kPi * r * r).epsilon(1e-8));
    CHECK(forward_ball_volume_grid(mr, bh, Vec::Zero(2), r, 256).value == doctest::Approx(kPi * r * r).epsilon(2e-3));
  }
  const BallVolumeCurve c = volume_ratio_curve(mr, bh, Vec::Zero(2), {0.5, 1.0});
  for (double f : c.ratios) CHECK(f == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(to_csv(c).find("r,") == 0);
}

TEST_CASE("Funk polar density near the base point") {
  const MetricSpec funk = MetricSpec::funk(3);
  const auto bh = MeasureSpec::busemann_hausdorff();
  const double sigma = density(bh, funk, Vec::Zero(3));
  for (double r : {1e-2, 1e-3}) {
    const double ratio = polar_density(funk, bh, Vec::Zero(3), r, Vec::Unit(3, 2)) / (sigma * r * r);
    // Along the unit-speed ray s = 1 - e^{-r}: ds/dr = e^{-r}, and the sphere factor is s^2.
    const double exact = std::pow(1 - std::exp(-r), 2) * std::exp(-r) / (r * r);
    CHECK(ratio == doctest::Approx(exact).epsilon(1e-6));
  }
}

TEST_CASE("flat polar density equals its small-radius limit") {
  const MetricSpec mr = MetricSpec::minkowski_randers(0.5);
  const auto bh = MeasureSpec::busemann_hausdorff();
  Vec y(2);
  y << 0.0, 1.0;
  y /= mr(Vec::Zero(2), y);
  const double limit = std::exp(-distortion(mr, bh, Vec::Zero(2), y));
  for (double r : {0.01, 0.5, 2.0})
    CHECK(polar_density(mr, bh, Vec::Zero(2), r, y) / r == doctest::Approx(limit).epsilon(1e-6));
}
