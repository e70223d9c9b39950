// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernels_internal.hpp"

namespace diskdft::simd::avx2 {
namespace {

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// (a0*b0, a1*b1) for two interleaved complex pairs
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, cmul(load2(a + i), load2(b + i)));
    acc1 = _mm256_add_pd(acc1, cmul(load2(a + i + 2), load2(b + i + 2)));
  }
  for (; i + 2 <= n; i += 2) acc0 = _mm256_add_pd(acc0, cmul(load2(a + i), load2(b + i)));
  acc0 = _mm256_add_pd(acc0, acc1);
  const __m128d lo = _mm256_castpd256_pd128(acc0);
  const __m128d hi = _mm256_extractf128_pd(acc0, 1);
  alignas(16) double s[2];
  _mm_store_pd(s, _mm_add_pd(lo, hi));
  cplx out{s[0], s[1]};
  if (i < n) out += scalar::cdot(a + i, b + i, n - i);
  return out;
}

void butterfly(cplx* lo, cplx* hi, const cplx* tw, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d t = cmul(load2(hi + i), load2(tw + i));
    const __m256d l = load2(lo + i);
    store2(hi + i, _mm256_sub_pd(l, t));
    store2(lo + i, _mm256_add_pd(l, t));
  }
  if (i < n) scalar::butterfly(lo + i, hi + i, tw + i, n - i);
}

void inv_pow_row(int p, cplx c, const cplx* w, double scale, cplx* out, std::size_t n) {
  const __m256d cv = _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag());
  const __m256d one = _mm256_setr_pd(1.0, 0.0, 1.0, 0.0);
  const __m256d sign = _mm256_setr_pd(scale, -scale, scale, -scale);
  std::size_t l = 0;
  for (; l + 2 <= n; l += 2) {
    __m256d base = _mm256_sub_pd(one, cmul(load2(w + l), cv));
    __m256d acc = one;
    for (int e = p;;) {
      if (e & 1) acc = cmul(acc, base);
      e >>= 1;
      if (e == 0) break;
      base = cmul(base, base);
    }
    const __m256d sq = _mm256_mul_pd(acc, acc);
    const __m256d den = _mm256_hadd_pd(sq, sq);
    store2(out + l, _mm256_div_pd(_mm256_mul_pd(acc, sign), den));
  }
  if (l < n) scalar::inv_pow_row(p, c, w + l, scale, out + l, n - l);
}

void horner(const cplx* coeffs, std::size_t nc, const cplx* x, cplx* out, std::size_t np) {
  std::size_t j = 0;
  for (; j + 2 <= np; j += 2) {
    const __m256d xv = load2(x + j);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t m = nc; m-- > 0;) {
      const __m256d cm = _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(coeffs + m));
      acc = _mm256_add_pd(cmul(acc, xv), cm);
    }
    store2(out + j, acc);
  }
  if (j < np) scalar::horner(coeffs, nc, x + j, out + j, np - j);
}

}  // namespace

const KernelTable& table() noexcept {
  static const KernelTable t{Backend::avx2, "avx2", &cdot, &butterfly, &inv_pow_row, &horner};
  return t;
}

}  // namespace diskdft::simd::avx2
