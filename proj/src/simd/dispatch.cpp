#include <cstdlib>
#include <string_view>

#include "diskdft/simd/kernels.hpp"
#include "kernels_internal.hpp"

namespace diskdft::simd {

const KernelTable* avx2_kernels() noexcept {
#if defined(DISKDFT_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &avx2::table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() noexcept {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("DISKDFT_SIMD");
    const std::string_view pick = env ? env : "auto";
    if (pick == "scalar") return &scalar_kernels();
    const KernelTable* fast = avx2_kernels();
    return fast ? fast : &scalar_kernels();
  }();
  return *chosen;
}

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::avx2: return "avx2";
    case Backend::scalar: break;
  }
  return "scalar";
}

}  // namespace diskdft::simd
