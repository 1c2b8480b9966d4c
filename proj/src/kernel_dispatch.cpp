#include <cstdlib>
#include <string_view>

#include "longalign/kernel.hpp"

namespace longalign::kernel {

const char* to_string(Isa isa) {
  switch (isa) {
    case Isa::Auto: return "auto";
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "?";
}

bool avx2_available() {
#if defined(LONGALIGN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported;
#else
  return false;
#endif
}

Isa resolve(Isa requested) {
  if (requested == Isa::Auto) {
    if (const char* env = std::getenv("LONGALIGN_ISA")) {
      if (std::string_view(env) == "scalar") return Isa::Scalar;
    }
    return avx2_available() ? Isa::Avx2 : Isa::Scalar;
  }
  if (requested == Isa::Avx2 && !avx2_available()) {
    throw AlignError(ErrorCode::InvalidArgument, "AVX2 kernel not available on this machine");
  }
  return requested;
}

BlockFn select(Isa requested) {
#if defined(LONGALIGN_HAVE_AVX2)
  if (resolve(requested) == Isa::Avx2) return &run_block_avx2;
#else
  (void)resolve(requested);
#endif
  return &run_block_scalar;
}

}  // namespace longalign::kernel
