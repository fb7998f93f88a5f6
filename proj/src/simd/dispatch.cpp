#include "finsler/simd/kernels.hpp"

#include "finsler/core.hpp"

#include <cstdlib>
#include <string>

namespace finsler::simd {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "scalar";
}

namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(FINSLER_HAVE_AVX2_TU)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(FINSLER_HAVE_NEON_TU)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select() {
  if (const char* env = std::getenv("FINSLER_SHARP_SIMD")) {
    const std::string want(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (want == to_string(isa) && cpu_has(isa)) return kernels(isa);
    }
  }
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (cpu_has(isa)) return kernels(isa);
  }
  return detail::kScalarTable;
}

}  // namespace

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (cpu_has(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& kernels(Isa isa) {
  if (!cpu_has(isa)) fail(ErrorCode::Unsupported, "ISA not available: " + std::string(to_string(isa)));
  switch (isa) {
#if defined(FINSLER_HAVE_AVX2_TU)
    case Isa::Avx2: return detail::kAvx2Table;
#endif
#if defined(FINSLER_HAVE_NEON_TU)
    case Isa::Neon: return detail::kNeonTable;
#endif
    default: return detail::kScalarTable;
  }
}

const KernelTable& kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace finsler::simd
