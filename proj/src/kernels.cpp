#include "mtirl/kernels.hpp"

#include <cstdlib>
#include <string_view>

#include "mtirl/error.hpp"

namespace mtirl::kernels {

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(MTIRL_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(MTIRL_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() {
  if (const char* forced = std::getenv("MTIRL_FORCE_ISA")) {
    const std::string_view f(forced);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (f == isa_name(isa) && isa_supported(isa)) return isa;
    }
  }
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  if (isa_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

const KernelTable& table(Isa isa) {
  if (!isa_supported(isa)) {
    throw Error(ErrorCode::invalid_input, std::string("kernel ISA not available: ") + isa_name(isa));
  }
  switch (isa) {
#if defined(MTIRL_HAVE_AVX2)
    case Isa::avx2: return detail::avx2_table();
#endif
#if defined(MTIRL_HAVE_NEON)
    case Isa::neon: return detail::neon_table();
#endif
    default: return detail::scalar_table();
  }
}

Isa active_isa() {
  static const Isa isa = detect_isa();
  return isa;
}

const KernelTable& active() {
  static const KernelTable& t = table(active_isa());
  return t;
}

}  // namespace mtirl::kernels
