#pragma once

#include "diskdft/simd/kernels.hpp"

namespace diskdft::simd {

namespace scalar {
cplx cdot(const cplx* a, const cplx* b, std::size_t n);
void butterfly(cplx* lo, cplx* hi, const cplx* tw, std::size_t n);
void inv_pow_row(int p, cplx c, const cplx* w, double scale, cplx* out, std::size_t n);
void horner(const cplx* coeffs, std::size_t nc, const cplx* x, cplx* out, std::size_t np);
}  // namespace scalar

#if defined(DISKDFT_HAVE_AVX2)
namespace avx2 {
const KernelTable& table() noexcept;
}
#endif

}  // namespace diskdft::simd
