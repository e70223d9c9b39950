#pragma once

/// \file kernels.hpp
/// Data-parallel inner loops behind the DFT, batched basis evaluation and
/// coherent-state overlap rows.
///
/// Every kernel has a portable scalar reference and, on x86-64 builds, an
/// AVX2+FMA variant. The variant is chosen once at first use from the CPU
/// feature bits; DISKDFT_SIMD=scalar|avx2|auto overrides the choice.
/// All arrays are interleaved std::complex<double>; no alignment is assumed.

#include <cstddef>
#include <string_view>

#include "diskdft/types.hpp"

namespace diskdft::simd {

enum class Backend { scalar, avx2 };

struct KernelTable {
  Backend backend;
  const char* name;

  /// sum_i a[i] * b[i]
  cplx (*cdot)(const cplx* a, const cplx* b, std::size_t n);

  /// Radix-2 butterflies: t = hi[i]*tw[i]; hi[i] = lo[i]-t; lo[i] = lo[i]+t.
  void (*butterfly)(cplx* lo, cplx* hi, const cplx* tw, std::size_t n);

  /// out[l] = scale / (1 - w[l]*c)^p for a positive integer power p.
  void (*inv_pow_row)(int p, cplx c, const cplx* w, double scale, cplx* out, std::size_t n);

  /// out[j] = sum_{m<nc} coeffs[m] * x[j]^m, Horner's rule per point.
  void (*horner)(const cplx* coeffs, std::size_t nc, const cplx* x, cplx* out, std::size_t np);
};

const KernelTable& scalar_kernels() noexcept;

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels() noexcept;

/// The table selected for this process.
const KernelTable& active_kernels() noexcept;

std::string_view backend_name(Backend b) noexcept;

}  // namespace diskdft::simd
