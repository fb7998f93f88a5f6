#include "finsler/simd/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace finsler::simd;

namespace {

struct Batch {
  int n;
  std::size_t m;
  std::vector<double> A, b, y, x;
};

Batch make_batch(int n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Batch B{n, m, std::vector<double>(n * n), std::vector<double>(n), std::vector<double>(n * m),
          std::vector<double>(n * m)};
  // A = I + 0.2 (M + M^T) stays positive definite for small entries.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = 0.1 * U(rng);
      B.A[i * n + j] = B.A[j * n + i] = (i == j ? 1.0 : 0.0) + v;
    }
  for (int i = 0; i < n; ++i) B.b[i] = 0.2 * U(rng);
  for (auto& v : B.y) v = U(rng);
  for (auto& v : B.x) v = 0.5 * U(rng);
  return B;
}

double max_rel(const std::vector<double>& a, const std::vector<double>& b) {
  double w = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  return w;
}

}  // namespace

TEST_CASE("scalar kernel is always available and matches a direct loop") {
  const KernelTable& S = kernels(Isa::Scalar);
  const Batch B = make_batch(3, 17, 1);
  std::vector<double> out(B.m);
  S.randers_norm(B.A.data(), B.b.data(), B.n, B.y.data(), B.m, out.data());
  for (std::size_t k = 0; k < B.m; ++k) {
    double q = 0, lin = 0;
    for (int i = 0; i < B.n; ++i) {
      lin += B.b[i] * B.y[i * B.m + k];
      for (int j = 0; j < B.n; ++j) q += B.A[i * B.n + j] * B.y[i * B.m + k] * B.y[j * B.m + k];
    }
    CHECK(out[k] == doctest::Approx(std::sqrt(q) + lin).epsilon(1e-14));
  }
  std::vector<double> big = {1e16, 1.0, -1e16, 1.0};
  CHECK(S.compensated_sum(big.data(), big.size()) == 2.0);
}

TEST_CASE("every available ISA agrees with the scalar kernels") {
  const KernelTable& S = kernels(Isa::Scalar);
  for (Isa isa : available_isas()) {
    CAPTURE(to_string(isa));
    const KernelTable& K = kernels(isa);
    CHECK(K.isa == isa);
    for (int n : {1, 2, 3, 4, 7}) {
      for (std::size_t m : {std::size_t{1}, std::size_t{3}, std::size_t{4}, std::size_t{5}, std::size_t{64},
                            std::size_t{1001}}) {
        CAPTURE(n);
        CAPTURE(m);
        const Batch B = make_batch(n, m, 100 * n + m);
        std::vector<double> a(m), b(m), ga(n * m), gb(n * m);
        S.randers_norm(B.A.data(), B.b.data(), n, B.y.data(), m, a.data());
        K.randers_norm(B.A.data(), B.b.data(), n, B.y.data(), m, b.data());
        CHECK(max_rel(b, a) < 1e-14);
        S.randers_gradient(B.A.data(), B.b.data(), n, B.y.data(), m, ga.data());
        K.randers_gradient(B.A.data(), B.b.data(), n, B.y.data(), m, gb.data());
        CHECK(max_rel(gb, ga) < 1e-13);
        S.funk_dual(B.x.data(), B.y.data(), n, m, a.data());
        K.funk_dual(B.x.data(), B.y.data(), n, m, b.data());
        CHECK(max_rel(b, a) < 1e-14);
        const double ss = S.compensated_sum(B.y.data(), B.y.size());
        CHECK(K.compensated_sum(B.y.data(), B.y.size()) == doctest::Approx(ss).epsilon(1e-15).scale(1.0));
        const double sd = S.compensated_dot(B.x.data(), B.y.data(), B.y.size());
        CHECK(K.compensated_dot(B.x.data(), B.y.data(), B.y.size()) == doctest::Approx(sd).epsilon(1e-15).scale(1.0));
        const double sm = S.masked_sum(B.y.data(), B.x.data(), 0.1, B.y.size());
        CHECK(K.masked_sum(B.y.data(), B.x.data(), 0.1, B.y.size()) == doctest::Approx(sm).epsilon(1e-15).scale(1.0));
      }
    }
  }
}

TEST_CASE("unsupported ISA requests throw") {
  const auto isas = available_isas();
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (std::find(isas.begin(), isas.end(), isa) == isas.end()) CHECK_THROWS(kernels(isa));
  }
  CHECK(std::find(isas.begin(), isas.end(), Isa::Scalar) != isas.end());
}
