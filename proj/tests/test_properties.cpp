// Randomized invariants over the metric families.
#include "finsler/curvature.hpp"
#include "finsler/functionals.hpp"
#include "finsler/geodesics.hpp"
#include "finsler/navigation.hpp"
#include "finsler/parallel.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace finsler;

namespace {

constexpr std::uint64_t kSeed = 0x5eed2024;

struct Sample {
  MetricSpec spec;
  Vec x;
};

Sample draw(std::mt19937_64& rng, int k) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  switch (k % 4) {
    case 0: return {MetricSpec::minkowski_randers(0.8 * U(rng)), test::random_in_ball(rng, 2, 2.0)};
    case 1: return {MetricSpec::funk(2), test::random_in_ball(rng, 2, 0.85)};
    case 2: return {MetricSpec::funk(3), test::random_in_ball(rng, 3, 0.85)};
    default: {
      Vec x = test::random_in_ball(rng, 3, 0.9);
      return {fish_tank(3).derived(), x};
    }
  }
}

}  // namespace

TEST_CASE("positive homogeneity, subadditivity and strong convexity") {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> U(0.05, 5.0);
  for (int k = 0; k < 60; ++k) {
    const Sample s = draw(rng, k);
    const int n = s.spec.dim();
    const Vec y = test::random_vec(rng, n), z = test::random_vec(rng, n);
    const double l = U(rng);
    const double F = s.spec(s.x, y);
    CHECK(s.spec(s.x, l * y) == doctest::Approx(l * F).epsilon(1e-12));
    CHECK(s.spec(s.x, y + z) <= F + s.spec(s.x, z) + 1e-12);
    const Mat g = fundamental_tensor(s.spec, s.x, y);
    CHECK(Eigen::SelfAdjointEigenSolver<Mat>(g).eigenvalues().minCoeff() > 0);
    CHECK(y.dot(g * y) == doctest::Approx(F * F).epsilon(1e-9));
    // g is 0-homogeneous in y.
    CHECK((fundamental_tensor(s.spec, s.x, l * y) - g).norm() < 1e-8 * g.norm());
  }
}

TEST_CASE("Fenchel-Young and dual reversibility") {
  std::mt19937_64 rng(kSeed + 1);
  for (int k = 0; k < 60; ++k) {
    const Sample s = draw(rng, k);
    const int n = s.spec.dim();
    const Vec y = test::random_vec(rng, n), eta = test::random_vec(rng, n);
    CHECK(eta.dot(y) <= eval_dual(s.spec, s.x, eta) * s.spec(s.x, y) + 1e-12);
    const Vec L = legendre(s.spec, s.x, y);
    CHECK(L.dot(y) == doctest::Approx(eval_dual(s.spec, s.x, L) * s.spec(s.x, y)).epsilon(1e-9));
  }
  std::mt19937_64 r2(kSeed + 2);
  for (int k = 0; k < 8; ++k) {
    const Sample s = draw(r2, k);
    CHECK(dual_reversibility(s.spec, s.x) == doctest::Approx(reversibility(s.spec, s.x)).epsilon(1e-4));
  }
}

TEST_CASE("eikonal identity for closed distance functions") {
  std::mt19937_64 rng(kSeed + 3);
  for (int k = 0; k < 50; ++k) {
    const bool funk = k % 2;
    const MetricSpec spec = funk ? MetricSpec::funk(3) : MetricSpec::minkowski_randers(0.6);
    const int n = spec.dim();
    const Vec base = funk ? Vec::Zero(n) : test::random_in_ball(rng, n, 1.0);
    const Vec x = test::random_in_ball(rng, n, funk ? 0.9 : 2.0);
    const DistanceField rho = distance_field(spec, base);
    CHECK(eval_dual(spec, x, rho.differential(x)) == doctest::Approx(1.0).epsilon(1e-10));
    // Triangle inequality through a random intermediate point.
    if (!funk) {
      const Vec z = test::random_in_ball(rng, n, 2.0);
      CHECK(rho(x) <= rho(z) + distance_field(spec, z)(x) + 1e-12);
    }
  }
}

TEST_CASE("uncertainty sandwich on Minkowski planes") {
  std::mt19937_64 rng(kSeed + 4);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const auto bh = MeasureSpec::busemann_hausdorff();
  for (int k = 0; k < 50; ++k) {
    const MetricSpec mr = MetricSpec::minkowski_randers(0.7 * U(rng));
    const TestFunction u = TestFunction::gaussian(0.2 + 2 * U(rng));
    const Vec x0 = test::random_in_ball(rng, 2, 1.0);
    auto q = [&](FunctionalTag t) { return evaluate_functional(t, mr, bh, x0, u, 2, 0).quotient; };
    const double jmax = q(FunctionalTag::Jmax), j = q(FunctionalTag::J), jmin = q(FunctionalTag::Jmin),
                 sj = q(FunctionalTag::ScriptJ);
    CHECK(jmin <= j + 1e-12);
    CHECK(j <= jmax + 1e-12);
    CHECK(jmin <= sj + 1e-12);
    CHECK(sj <= jmax + 1e-12);
    CHECK(jmax >= 1.0 - 5e-6);
  }
}

TEST_CASE("parallel sums do not depend on the thread count") {
  std::vector<double> v(100003);
  std::mt19937_64 rng(kSeed + 5);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (auto& e : v) e = U(rng);
  auto partial = [&](std::size_t a, std::size_t b) {
    double s = 0;
    for (std::size_t i = a; i < b; ++i) s += v[i];
    return s;
  };
  const double s1 = parallel_sum(v.size(), 1000, partial);
  const double s2 = parallel_sum(v.size(), 1000, partial);
  CHECK(s1 == s2);
  CHECK(thread_count() >= 1);
}
