#include "diskdft/simd/kernels.hpp"
#include "kernels_internal.hpp"

namespace diskdft::simd {
namespace scalar {

cplx cdot(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

void butterfly(cplx* lo, cplx* hi, const cplx* tw, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double hr = hi[i].real(), hh = hi[i].imag();
    const double wr = tw[i].real(), wi = tw[i].imag();
    const double tr = hr * wr - hh * wi;
    const double ti = hr * wi + hh * wr;
    const double lr = lo[i].real(), li = lo[i].imag();
    hi[i] = {lr - tr, li - ti};
    lo[i] = {lr + tr, li + ti};
  }
}

namespace {
inline void cmul(double& xr, double& xi, double yr, double yi) {
  const double r = xr * yr - xi * yi;
  xi = xr * yi + xi * yr;
  xr = r;
}
}  // namespace

void inv_pow_row(int p, cplx c, const cplx* w, double scale, cplx* out, std::size_t n) {
  const double cr = c.real(), ci = c.imag();
  for (std::size_t l = 0; l < n; ++l) {
    // base = 1 - w c
    double br = 1.0 - (w[l].real() * cr - w[l].imag() * ci);
    double bi = -(w[l].real() * ci + w[l].imag() * cr);
    double rr = 1.0, ri = 0.0;
    for (int e = p;;) {
      if (e & 1) cmul(rr, ri, br, bi);
      e >>= 1;
      if (e == 0) break;
      cmul(br, bi, br, bi);
    }
    const double d = rr * rr + ri * ri;
    out[l] = {scale * rr / d, -scale * ri / d};
  }
}

void horner(const cplx* coeffs, std::size_t nc, const cplx* x, cplx* out, std::size_t np) {
  for (std::size_t j = 0; j < np; ++j) {
    const double xr = x[j].real(), xi = x[j].imag();
    double ar = 0.0, ai = 0.0;
    for (std::size_t m = nc; m-- > 0;) {
      const double t = ar * xr - ai * xi + coeffs[m].real();
      ai = ar * xi + ai * xr + coeffs[m].imag();
      ar = t;
    }
    out[j] = {ar, ai};
  }
}

}  // namespace scalar

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{Backend::scalar, "scalar", &scalar::cdot, &scalar::butterfly,
                                 &scalar::inv_pow_row, &scalar::horner};
  return table;
}

}  // namespace diskdft::simd
