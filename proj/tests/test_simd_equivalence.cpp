#include <doctest.h>

#include <cmath>

#include "diskdft/oracle.hpp"
#include "diskdft/simd/kernels.hpp"

using namespace diskdft;

namespace {

std::vector<cplx> random_vec(oracle::Rng& rng, std::size_t n, double scale = 1.0) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = {scale * rng.normal(), scale * rng.normal()};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
  return d;
}

}  // namespace

TEST_CASE("active backend is one of the compiled tables") {
  const auto& k = simd::active_kernels();
  CHECK((k.backend == simd::Backend::scalar || k.backend == simd::Backend::avx2));
  CHECK(simd::backend_name(k.backend) == std::string_view(k.name));
  if (k.backend == simd::Backend::avx2) CHECK(simd::avx2_kernels() != nullptr);
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const auto* v = simd::avx2_kernels();
  if (v == nullptr) {
    MESSAGE("AVX2 kernels unavailable on this build or CPU; equivalence not exercised");
    return;
  }
  const auto& s = simd::scalar_kernels();
  oracle::Rng rng(2024);
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 64u, 101u, 1000u}) {
    CAPTURE(n);
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);
    const cplx ds = s.cdot(a.data(), b.data(), n);
    const cplx dv = v->cdot(a.data(), b.data(), n);
    CHECK(std::abs(ds - dv) <= 1e-14 * std::max(1.0, std::sqrt(double(n))) * 4);

    auto lo_s = random_vec(rng, n), hi_s = random_vec(rng, n);
    const auto tw = random_vec(rng, n);
    auto lo_v = lo_s, hi_v = hi_s;
    s.butterfly(lo_s.data(), hi_s.data(), tw.data(), n);
    v->butterfly(lo_v.data(), hi_v.data(), tw.data(), n);
    CHECK(max_diff(lo_s, lo_v) < 1e-15);
    CHECK(max_diff(hi_s, hi_v) < 1e-15);

    std::vector<cplx> w(n);
    for (auto& x : w) x = oracle::random_disk_point(rng, 0.9);
    const cplx c = oracle::random_disk_point(rng, 0.9);
    for (int p : {1, 2, 3, 6, 11}) {
      std::vector<cplx> os(n), ov(n);
      s.inv_pow_row(p, c, w.data(), 0.7, os.data(), n);
      v->inv_pow_row(p, c, w.data(), 0.7, ov.data(), n);
      CHECK(max_diff(os, ov) < 1e-13);
    }

    for (std::size_t nc : {1u, 2u, 9u, 40u}) {
      const auto coeffs = random_vec(rng, nc);
      std::vector<cplx> x(n);
      for (auto& z : x) z = oracle::random_disk_point(rng, 0.95);
      std::vector<cplx> hs(n), hv(n);
      s.horner(coeffs.data(), nc, x.data(), hs.data(), n);
      v->horner(coeffs.data(), nc, x.data(), hv.data(), n);
      CHECK(max_diff(hs, hv) < 1e-12);
    }
  }
}
