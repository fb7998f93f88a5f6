#include "finsler/geodesics.hpp"
#include "finsler/measures.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace finsler;

TEST_CASE("spray: automatic vs finite differences") {
  std::mt19937_64 rng(5);
  for (const auto& spec : {MetricSpec::funk(2), MetricSpec::funk(3)}) {
    for (int k = 0; k < 4; ++k) {
      const Vec x = test::random_in_ball(rng, spec.dim(), 0.6);
      const Vec y = test::random_vec(rng, spec.dim());
      const Vec G = spray_coefficients(spec, x, y);
      CHECK((G - 0.5 * spec(x, y) * y).norm() < 1e-10);
      CHECK((spray_coefficients_fd(spec, x, y) - G).norm() < 1e-5 * G.norm());
    }
  }
}

TEST_CASE("Minkowski geodesics are straight lines") {
  const MetricSpec mr = MetricSpec::minkowski_randers(0.5);
  Vec x0(2), y(2);
  x0 << 0.1, 0.2;
  y << 0.3, -0.7;
  CHECK(spray_coefficients(mr, x0, y).norm() < 1e-14);
  CHECK((exp_map(mr, x0, y) - (x0 + y)).norm() < 1e-12);
}

TEST_CASE("Funk radial geodesic reaches rho = t") {
  const MetricSpec funk = MetricSpec::funk(3);
  const Vec o = Vec::Zero(3);
  const Vec y = Vec::Unit(3, 0);
  const GeodesicPath p = integrate_geodesic(funk, o, y, 0.5);
  const DistanceField rho = distance_field(funk, o);
  CHECK(rho(p.states.back().x) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(p.max_speed_drift < 1e-6);
  // Unit-speed forward ray from 0 is x(t) = (1 - e^{-t}) e1.
  CHECK(p.states.back().x(0) == doctest::Approx(1 - std::exp(-0.5)).epsilon(1e-8));
}

TEST_CASE("distance fields satisfy the eikonal identity") {
  std::mt19937_64 rng(9);
  const MetricSpec mr = MetricSpec::minkowski_randers(0.3);
  Vec base(2);
  base << 0.5, -0.2;
  const DistanceField rho = distance_field(mr, base);
  const DistanceField rev = reverse_distance_field(mr, base);
  for (int k = 0; k < 5; ++k) {
    const Vec x = test::random_in_ball(rng, 2, 2.0);
    CHECK(rho(x) == doctest::Approx(test::mr_closed(0.3, x - base)));
    CHECK(rev(x) == doctest::Approx(test::mr_closed(0.3, base - x)));
    CHECK(eval_dual(mr, x, rho.differential(x)) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const MetricSpec funk = MetricSpec::funk(3);
  const DistanceField fr = distance_field(funk, Vec::Zero(3));
  for (int k = 0; k < 5; ++k) {
    const Vec x = test::random_in_ball(rng, 3, 0.9);
    CHECK(fr(x) == doctest::Approx(-std::log(1 - x.norm())));
    CHECK(eval_dual(funk, x, fr.differential(x)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Euclidean Laplacian of distance is (n-1)/r") {
  const MetricSpec e = MetricSpec::euclidean(3);
  Vec x(3);
  x << 0.3, 0.4, 1.2;
  CHECK(laplacian_of_distance(e, MeasureSpec::lebesgue(), Vec::Zero(3), x) ==
        doctest::Approx(2.0 / x.norm()).epsilon(1e-6));
}
