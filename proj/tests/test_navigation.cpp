#include "finsler/curvature.hpp"
#include "finsler/navigation.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace finsler;

namespace {

// Hand-rolled RK4 flow of x' = Qx + c.
Vec rk4_flow(const Mat& Q, const Vec& c, Vec x, double t, int steps) {
  const double h = t / steps;
  auto f = [&](const Vec& z) -> Vec { return Q * z + c; };
  for (int k = 0; k < steps; ++k) {
    const Vec k1 = f(x), k2 = f(x + 0.5 * h * k1), k3 = f(x + 0.5 * h * k2), k4 = f(x + h * k3);
    x += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return x;
}

}  // namespace

TEST_CASE("fish tank: root finder vs closed forms") {
  std::mt19937_64 rng(13);
  const NavigationData ft = fish_tank(3);
  for (int k = 0; k < 10; ++k) {
    Vec x = test::random_in_ball(rng, 3, 0.9);
    const Vec y = test::random_vec(rng, 3);
    const double F = navigate(ft, x, y);
    const double w = -x(1) * y(0) + x(0) * y(1);
    const double d = 1 - x(0) * x(0) - x(1) * x(1);
    CHECK(F == doctest::Approx((std::sqrt(w * w + y.squaredNorm() * d) - w) / d).epsilon(1e-12));
    CHECK(fish_tank_closed_form(x, y) == doctest::Approx(F).epsilon(1e-12));
    CHECK(navigation_residual(ft, x, y, F) < 1e-11);
  }
}

TEST_CASE("wind must be weak") {
  const NavigationData ft = fish_tank(3);
  Vec x(3);
  x << 1.2, 0.0, 0.0;
  CHECK(!ft.valid_at(x));
  CHECK_THROWS_AS(navigate(ft, x, Vec::Unit(3, 0)), Error);
}

TEST_CASE("wind flow matches direct ODE integration") {
  Mat Q(3, 3);
  Q << 0.1, -0.4, 0.0, 0.4, 0.1, 0.2, 0.0, -0.2, -0.3;
  Vec c(3);
  c << 0.3, -0.1, 0.2;
  const WindField V = WindField::matrix(Q, c);
  Vec x(3);
  x << 0.2, 0.5, -0.1;
  for (double t : {0.1, 0.7, -0.5}) {
    const FlowMap m = wind_flow(V, x, t);
    CHECK((m.x - rk4_flow(Q, c, x, t, 2000)).norm() < 1e-12);
    Mat D(3, 3);
    for (int i = 0; i < 3; ++i) D.col(i) = rk4_flow(Q, Vec::Zero(3), Vec::Unit(3, i), t, 2000);
    CHECK((m.differential - D).norm() < 1e-12);
  }
}

TEST_CASE("Killing checks") {
  const NavigationData ft = fish_tank(3);
  std::vector<Vec> pts = {Vec::Zero(3), 0.3 * Vec::Ones(3)};
  std::vector<Vec> ys = {Vec::Unit(3, 0), Vec::Ones(3)};
  CHECK(killing_check(ft, {0.2, 1.0}, pts, ys).max_defect < 1e-10);
  const NavigationData hom{MetricSpec::euclidean(3), WindField::radial(3)};
  CHECK(killing_check(hom, {0.1}, pts, ys).max_defect > 1e-2);
}

TEST_CASE("transfer of curvature under a Killing wind") {
  const NavigationData ft = fish_tank(3);
  Vec x(3), y(3), v(3);
  x << 0.2, -0.3, 0.1;
  y << 1.0, 0.4, -0.2;
  v << 0.0, 1.0, 0.5;
  const TransferReport r = transfer_check(ft, {x}, {y}, {v});
  CHECK(r.max_K_defect < 3e-3);
  CHECK(r.max_S_defect < 1e-3);
  CHECK(bh_equality_defect(ft, {x}) < 1e-6);
  CHECK(non_berwald_witness(ft, {x}, {y}).reflection_defect > 1e-4);
}

TEST_CASE("zero wind returns the base metric") {
  const NavigationData d{MetricSpec::funk(2), WindField::zero(2)};
  Vec x(2), y(2);
  x << 0.3, 0.2;
  y << -0.5, 1.0;
  CHECK(navigate(d, x, y) == doctest::Approx(test::funk_closed(x, y)).epsilon(1e-12));
  CHECK(d.derived().family() == Family::Navigation);
}

TEST_CASE("rotation winds must be skew") {
  Mat Q = Mat::Identity(2, 2);
  CHECK_THROWS_AS(WindField::rotation(Q), Error);
}

TEST_CASE("navigation dual is the base dual shifted by the wind") {
  std::mt19937_64 rng(17);
  const NavigationData d{MetricSpec::funk(2), WindField::rotation((Mat(2, 2) << 0, 0.4, -0.4, 0).finished())};
  const MetricSpec nav = d.derived();
  for (int k = 0; k < 5; ++k) {
    const Vec x = test::random_in_ball(rng, 2, 0.6);
    const Vec eta = test::random_vec(rng, 2);
    CHECK(eval_dual(nav, x, eta) == doctest::Approx(eval_dual_numeric(nav, x, eta)).epsilon(1e-9));
  }
}
