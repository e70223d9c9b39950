#include <doctest.h>

#include <cmath>

#include <Eigen/LU>

#include "diskdft/frame.hpp"
#include "diskdft/oracle.hpp"

using namespace diskdft;

TEST_CASE("factored frame entries match the dense basis-function frame") {
  for (int twice_s : {2, 3, 6}) {
    for (int n : {1, 2, 5, 9}) {
      for (double r : {0.2, 0.55, 0.9}) {
        const SamplingGrid g(r, n);
        const int m = n - 1;
        const FrameMatrix fm(Sympling(twice_s), g, m);
        const auto dense = oracle::dense_frame(Sympling(twice_s), g, m + 1);
        CHECK((fm.dense() - dense.entries).cwiseAbs().maxCoeff() < 1e-13);
        const auto diag = resolution_diagonal(fm);
        for (int c = 0; c <= m; ++c) {
          CHECK(dense.entries.col(c).squaredNorm() == doctest::Approx(diag[c]).epsilon(1e-13));
        }
        const Eigen::MatrixXcd a = resolution_operator(fm);
        Eigen::MatrixXcd off = a;
        off.diagonal().setZero();
        CHECK(off.cwiseAbs().maxCoeff() < 1e-14 * a.cwiseAbs().maxCoeff());
      }
    }
  }
}

TEST_CASE("frame fixtures and validation") {
  const FrameMatrix fm(Sympling(2), SamplingGrid(0.5, 2), 1);
  CHECK(fm.entry(0, 0).real() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(std::abs(fm.entry(1, 1) - cplx(-0.75 * std::sqrt(2.0) * 0.5, 0.0)) < 1e-15);
  CHECK_THROWS_WITH_AS(FrameMatrix(Sympling(2), SamplingGrid(0.5, 2), 2), doctest::Contains("band limit too large"),
                       InvalidArgument);
  CHECK_THROWS_AS(frame_matrix(Sympling(2), SamplingGrid(0.5, 2), -1), InvalidArgument);
}

TEST_CASE("apply and adjoint agree with the dense matrix") {
  oracle::Rng rng(7);
  const SamplingGrid g(0.6, 64);
  const FrameMatrix fm(Sympling(3), g, 20);
  const Eigen::MatrixXcd t = fm.dense();
  std::vector<cplx> a(21), y(64);
  for (auto& v : a) v = {rng.normal(), rng.normal()};
  for (auto& v : y) v = {rng.normal(), rng.normal()};
  const auto ta = fm.apply(a);
  const auto tsy = fm.apply_adjoint(y);
  const Eigen::VectorXcd ta_ref = t * Eigen::Map<const Eigen::VectorXcd>(a.data(), 21);
  const Eigen::VectorXcd tsy_ref = t.adjoint() * Eigen::Map<const Eigen::VectorXcd>(y.data(), 64);
  for (int i = 0; i < 64; ++i) CHECK(std::abs(ta[i] - ta_ref(i)) < 1e-13);
  for (int i = 0; i < 21; ++i) CHECK(std::abs(tsy[i] - tsy_ref(i)) < 1e-12);
}

TEST_CASE("bandlimited reconstruction is exact and Fourier data round-trips") {
  oracle::Rng rng(99);
  for (int twice_s : {2, 3, 5}) {
    for (int m : {0, 3, 7}) {
      for (int n : {m + 1, m + 4}) {
        const SamplingGrid g(0.45, n);
        const FrameMatrix fm(Sympling(twice_s), g, m);
        oracle::SignalSpec spec{oracle::SignalKind::bandlimited, m, 0.0};
        const auto psi = oracle::random_signal(Sympling(twice_s), spec, rng.integer(0, 1 << 30));
        const auto samples = sample_signal(psi, g);
        const BandlimitedInterpolant interp(fm, samples);
        for (int k = 0; k < n; ++k) CHECK(std::abs(interp(g.disk_point(k)) - samples[k]) < 1e-13);
        for (int q = 0; q < 10; ++q) {
          const DiskPoint z(oracle::random_disk_point(rng));
          CHECK(std::abs(interp(z) - signal_eval(psi, z)) < 1e-10);
        }
        const auto a = fourier_coeffs_from_samples(fm, samples);
        for (int i = 0; i <= m; ++i) CHECK(std::abs(a[i] - psi[i]) < 1e-11);
      }
    }
  }
}

TEST_CASE("sinc kernel interpolates and spans an orthogonal projector") {
  for (int m : {0, 2, 5}) {
    const SamplingGrid g(0.7, m + 1);
    const FrameMatrix fm(Sympling(4), g, m);
    for (int k = 0; k <= m; ++k)
      for (int l = 0; l <= m; ++l)
        CHECK(std::abs(sinc_kernel(fm, k, g.disk_point(l)) - (k == l ? 1.0 : 0.0)) < 1e-13);
  }
  const SamplingGrid g(0.7, 9);
  const FrameMatrix fm(Sympling(3), g, 4);
  const Eigen::MatrixXcd p = sample_space_projector(fm);
  CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(p.trace().real() == doctest::Approx(5.0).epsilon(1e-14));
  // P = T (T*T)^{-1} T*
  const Eigen::MatrixXcd t = fm.dense();
  const Eigen::MatrixXcd ref = t * (t.adjoint() * t).inverse() * t.adjoint();
  CHECK((p - ref).cwiseAbs().maxCoeff() < 1e-12);
  for (int k = 0; k < 9; ++k)
    for (int l = 0; l < 9; ++l) CHECK(std::abs(sinc_kernel(fm, k, g.disk_point(l)) - p(l, k)) < 1e-14);
}
