// First row of the circulant overlap kernel and its DFT in extended precision.
// Small eigenvalues of B arise from heavy cancellation in the row DFT; 113-bit
// arithmetic keeps them accurate to double precision over the useful range.

#include "extended_dft.hpp"

#include <cmath>

#if defined(DISKDFT_HAVE_QUADMATH)
#include <quadmath.h>
#endif

namespace diskdft::detail {
namespace {

#if defined(DISKDFT_HAVE_QUADMATH)
using xreal = __float128;
inline xreal xcos(xreal x) { return cosq(x); }
inline xreal xsin(xreal x) { return sinq(x); }
inline xreal xabs(xreal x) { return fabsq(x); }
const xreal kPi = M_PIq;
constexpr double kUnitRoundoff = 9.63e-35;  // 2^-113
#else
using xreal = long double;
inline xreal xcos(xreal x) { return std::cos(x); }
inline xreal xsin(xreal x) { return std::sin(x); }
inline xreal xabs(xreal x) { return std::fabs(x); }
const xreal kPi = 3.141592653589793238462643383279502884L;
constexpr double kUnitRoundoff = 5.42e-20;  // 2^-64
#endif

struct xcplx {
  xreal re;
  xreal im;
};

inline xcplx mul(xcplx a, xcplx b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

xcplx xroot(std::int64_t k, std::int64_t n) {
  k %= n;
  if (k < 0) k += n;
  const std::int64_t q = (4 * k) / n;
  const std::int64_t rem = 4 * k - q * n;
  xreal c, s;
  if (2 * rem <= n) {
    const xreal t = kPi / 2 * static_cast<xreal>(rem) / static_cast<xreal>(n);
    c = xcos(t);
    s = xsin(t);
  } else {
    const xreal t = kPi / 2 * static_cast<xreal>(n - rem) / static_cast<xreal>(n);
    c = xsin(t);
    s = xcos(t);
  }
  switch (q) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

}  // namespace

double extended_unit_roundoff() noexcept { return kUnitRoundoff; }

ExtendedRowDft circulant_row_dft_extended(int twice_s, double r, int n) {
  const xreal rx = r;
  const xreal r2 = rx * rx;
  const xreal one_minus_r2 = (1 - rx) * (1 + rx);
  const auto nn = static_cast<std::size_t>(n);

  std::vector<xcplx> roots(nn);
  for (int m = 0; m < n; ++m) roots[static_cast<std::size_t>(m)] = xroot(m, n);

  // C_l = ((1-r^2) / (1 - r^2 w^l))^{2s}
  std::vector<xcplx> row(nn);
  for (std::size_t l = 0; l < nn; ++l) {
    const xcplx d{1 - r2 * roots[l].re, -r2 * roots[l].im};
    const xreal den = d.re * d.re + d.im * d.im;
    xcplx base{one_minus_r2 * d.re / den, -one_minus_r2 * d.im / den};
    xcplx acc{1, 0};
    for (int e = twice_s;;) {
      if (e & 1) acc = mul(acc, base);
      e >>= 1;
      if (e == 0) break;
      base = mul(base, base);
    }
    row[l] = acc;
  }

  ExtendedRowDft out;
  out.first_row.resize(nn);
  out.eigenvalues.resize(nn);
  xreal row_abs_max = 0;
  for (std::size_t l = 0; l < nn; ++l) {
    out.first_row[l] = {static_cast<double>(row[l].re), static_cast<double>(row[l].im)};
    const xreal a = xabs(row[l].re) + xabs(row[l].im);
    if (a > row_abs_max) row_abs_max = a;
  }
  out.row_abs_max = static_cast<double>(row_abs_max);

  // lambda_hat_j = sum_l C_l w^{-jl}
  double imag_max = 0.0;
  for (std::size_t j = 0; j < nn; ++j) {
    xreal re = 0, im = 0;
    std::size_t idx = 0;
    for (std::size_t l = 0; l < nn; ++l) {
      // w^{-jl} = conj(roots[jl mod N])
      const xcplx w = roots[idx];
      re += row[l].re * w.re + row[l].im * w.im;
      im += row[l].im * w.re - row[l].re * w.im;
      idx += j;
      if (idx >= nn) idx -= nn;
    }
    out.eigenvalues[j] = static_cast<double>(re);
    imag_max = std::max(imag_max, static_cast<double>(xabs(im)));
  }
  out.imag_residue = imag_max;
  return out;
}

}  // namespace diskdft::detail
