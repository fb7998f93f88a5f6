#pragma once

// Batched inner-loop kernels with scalar reference versions and vectorized
// variants chosen at runtime. Point batches use structure-of-arrays layout:
// component i of point k lives at data[i * m + k].

#include <cstddef>
#include <string_view>
#include <vector>

namespace finsler::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;
  /// out[k] = sqrt(y_k^T A y_k) + b.y_k; A row-major n x n.
  void (*randers_norm)(const double* A, const double* b, int n, const double* y, std::size_t m,
                       double* out);
  /// out[i*m+k] = (A y_k)_i / sqrt(y_k^T A y_k) + b_i.
  void (*randers_gradient)(const double* A, const double* b, int n, const double* y,
                           std::size_t m, double* out);
  /// out[k] = |eta_k| - <x_k, eta_k>.
  void (*funk_dual)(const double* x, const double* eta, int n, std::size_t m, double* out);
  /// Neumaier-compensated sum.
  double (*compensated_sum)(const double* v, std::size_t m);
  /// Dot product with error-free products and compensated accumulation.
  double (*compensated_dot)(const double* a, const double* b, std::size_t m);
  /// Compensated sum of values[k] over k with key[k] < threshold.
  double (*masked_sum)(const double* values, const double* key, double threshold, std::size_t m);
};

/// Kernels for the best ISA supported by this CPU, unless FINSLER_SHARP_SIMD
/// names another one (scalar, avx2, neon).
const KernelTable& kernels();

/// Kernels for a specific ISA; throws Unsupported when not available.
const KernelTable& kernels(Isa isa);

std::vector<Isa> available_isas();

namespace detail {
extern const KernelTable kScalarTable;
#if defined(FINSLER_HAVE_AVX2_TU)
extern const KernelTable kAvx2Table;
#endif
#if defined(FINSLER_HAVE_NEON_TU)
extern const KernelTable kNeonTable;
#endif
}  // namespace detail

}  // namespace finsler::simd
