#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "diskdft/oracle.hpp"
#include "diskdft/undersampling.hpp"

using namespace diskdft;

namespace {

const Sympling kS1(2);
const SamplingGrid kG2(0.5, 2);

}  // namespace

TEST_CASE("two-point kernel fixtures") {
  const CirculantKernel k(kS1, kG2);
  CHECK(k.first_row()[0] == cplx(1.0, 0.0));
  CHECK(std::abs(k.first_row()[1] - 0.36) < 1e-15);
  const auto ev = kernel_eigenvalues(k);
  CHECK(std::abs(ev[0] - 1.36) < 1e-14);
  CHECK(std::abs(ev[1] - 0.64) < 1e-14);
  const auto series = kernel_eigenvalues_series(kS1, kG2);
  CHECK(std::abs(series[0] - 1.36) < 1e-14);
  CHECK(std::abs(series[1] - 0.64) < 1e-14);

  const auto inv = invert_kernel(k);
  CHECK(inv.matrix(0, 0).real() == doctest::Approx(0.5 * (1 / 1.36 + 1 / 0.64)).epsilon(1e-14));
  CHECK(inv.matrix(0, 1).real() == doctest::Approx(0.5 * (1 / 1.36 - 1 / 0.64)).epsilon(1e-14));
  CHECK(inv.matrix(0, 0).real() == doctest::Approx(1.1488971).epsilon(1e-7));
  CHECK(inv.matrix(0, 1).real() == doctest::Approx(-0.4136029).epsilon(1e-7));
  CHECK_FALSE(inv.ill_conditioned);

  CHECK(dual_sinc_kernel(k, 0, DiskPoint(0, 0)).real() == doctest::Approx(0.5514706).epsilon(1e-7));
  CHECK(epsilon_n(k, 0) == doctest::Approx((1.36 - 1.125) / 1.125).epsilon(1e-14));
  CHECK(projector_elements(k, 0, 0) == doctest::Approx(1.125 / 1.36).epsilon(1e-14));
  CHECK(projector_elements(k, 0, 1) == 0.0);
  CHECK(projector_elements(k, 0, 2) == doctest::Approx(std::sqrt(1.125 * 0.2109375) / 1.36).epsilon(1e-14));
  CHECK(projector_elements(k, 2, 0) == projector_elements(k, 0, 2));

  const std::vector<cplx> samples{0.75, 0.75};
  const auto a_hat = dft_hyperboloid(k, samples, 4);
  CHECK(a_hat[0].real() == doctest::Approx(1.125 / 1.36).epsilon(1e-14));
  const auto back = rescale_truncate(k, a_hat, 0);
  CHECK(std::abs(back[0] - 1.0) < 1e-15);

  const CoeffSignal delta(kS1, {1.0});
  const double e = error_exact(k, delta);
  CHECK(e * e == doctest::Approx(1 - 1.125 / 1.36).epsilon(1e-13));
  CHECK(e * e == doctest::Approx(0.1727941).epsilon(1e-7));
}

TEST_CASE("kernel structure on a random sweep") {
  oracle::Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const Sympling s(rng.integer(2, 8));
    const SamplingGrid g(rng.uniform(0.05, 0.95), rng.integer(1, 24));
    const CirculantKernel k(s, g);
    CAPTURE(s.twice());
    CAPTURE(g.radius());
    CAPTURE(g.size());
    const int n = g.size();

    const Eigen::MatrixXcd b = k.assemble();
    const auto dense = oracle::dense_gram(s, g);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const cplx d(static_cast<double>(dense(i, j).real()), static_cast<double>(dense(i, j).imag()));
        CHECK(std::abs(b(i, j) - d) < 1e-13);
        CHECK(std::abs(b(i, j) - overlap(s, g.disk_point(i), g.disk_point(j))) < 1e-13);
      }

    // F* B F = diag(lambda_hat_{-j}), F_{kj} = e^{2 pi i kj/N}/sqrt(N)
    Eigen::MatrixXcd f(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) f(i, j) = unit_root(static_cast<std::int64_t>(i) * j, n) / std::sqrt(double(n));
    const Eigen::MatrixXcd d = f.adjoint() * b * f;
    const auto ev = k.eigenvalues();
    double emax = 0.0, trace = 0.0;
    for (double v : ev) emax = std::max(emax, v), trace += v;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(std::abs(d(i, j) - (i == j ? ev[(n - i) % n] : 0.0)) <= 1e-12 * emax);
    CHECK(trace == doctest::Approx(double(n)).epsilon(1e-13));
    CHECK(k.dft_imaginary_residue() <= 1e-13);

    const auto eps = k.tail_ratios();
    for (int j = 0; j < n; ++j) {
      CHECK(eps[j] > 0.0);
      CHECK(k.log_eigenvalue(j) >= k.spectrum().log_lambda(j));
      if (j > 0) CHECK(eps[j] < eps[j - 1]);
    }

    const auto inv = invert_kernel(k);
    const double resid = (b * inv.matrix - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (inv.condition <= 1e4) {
      CHECK(resid <= 1e-11);
    } else {
      CHECK(resid <= inv.condition * 1e-14);
    }
    CHECK(inv.ill_conditioned == (inv.condition > 1e12));
  }
}

TEST_CASE("N = 1 reduces to a single coherent state") {
  for (int twice_s : {2, 5}) {
    const SamplingGrid g(0.6, 1);
    const CirculantKernel k(Sympling(twice_s), g);
    CHECK(k.eigenvalues()[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(invert_kernel(k).matrix(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
    const DiskPoint z(0.3, -0.2);
    const cplx xi = dual_sinc_kernel(k, 0, z);
    CHECK(std::abs(xi - overlap(Sympling(twice_s), z, g.disk_point(0))) < 1e-13);
  }
}

TEST_CASE("dual kernel: stable series, inverse sum, sectioned form and dense oracle agree") {
  oracle::Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const Sympling s(rng.integer(2, 6));
    const SamplingGrid g(rng.uniform(0.2, 0.9), rng.integer(1, 12));
    const CirculantKernel k(s, g);
    if (k.condition_number() > 1e6) continue;
    const double tol = 1e-10 * std::max(1.0, k.condition_number() * 1e-4);
    for (int q = 0; q < 4; ++q) {
      const DiskPoint z(oracle::random_disk_point(rng, 0.9));
      const int kk = rng.integer(0, g.size() - 1);
      const cplx a = dual_sinc_kernel(k, kk, z);
      CHECK(std::abs(a - dual_sinc_kernel_inverse_sum(k, kk, z)) < tol);
      CHECK(std::abs(a - dual_sinc_kernel_sectioned(k, kk, z)) < tol);
      CHECK(std::abs(a - oracle::dense_dual_sinc(s, g, kk, z.value())) < tol);
    }
  }
}

TEST_CASE("partial reconstruction interpolates, projects and is linear") {
  oracle::Rng rng(73);
  for (int trial = 0; trial < 25; ++trial) {
    const Sympling s(rng.integer(2, 6));
    const SamplingGrid g(rng.uniform(0.2, 0.9), rng.integer(1, 16));
    const CirculantKernel k(s, g);
    oracle::SignalSpec spec{oracle::SignalKind::geometric, 0, rng.uniform(0.2, 0.9)};
    const auto psi = oracle::random_signal(s, spec, rng.integer(0, 1 << 30));
    const auto samples = sample_signal(psi, g);
    const PartialReconstruction pr(k, samples);
    double smax = 0.0;
    for (auto v : samples) smax = std::max(smax, std::abs(v));
    for (int j = 0; j < g.size(); ++j) CHECK(std::abs(pr(g.disk_point(j)) - samples[j]) <= 1e-10 * smax);

    // psi_hat = sum_n a_hat_n U_n
    const auto a_hat = dft_hyperboloid(k, samples, 600);
    const CoeffSignal proj(s, a_hat);
    for (int q = 0; q < 3; ++q) {
      const DiskPoint z(oracle::random_disk_point(rng, 0.8));
      CHECK(std::abs(pr(z) - signal_eval(proj, z)) < 1e-10 * std::max(1.0, smax));
    }
  }
  const CirculantKernel k(Sympling(3), SamplingGrid(0.5, 5));
  const std::vector<cplx> zero(5);
  CHECK(partial_reconstruct(k, zero, DiskPoint(0.2, 0.1)) == cplx(0.0, 0.0));
  CHECK_THROWS_AS(partial_reconstruct(k, std::vector<cplx>(4), DiskPoint(0, 0)), InvalidArgument);
}

TEST_CASE("hyperboloid DFT: periodization and the bandlimited round trip") {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Sympling s(rng.integer(2, 6));
    const int n = rng.integer(1, 10);
    const SamplingGrid g(rng.uniform(0.2, 0.8), n);
    const CirculantKernel k(s, g);
    const int m = rng.integer(0, n - 1);
    oracle::SignalSpec spec{oracle::SignalKind::bandlimited, m, 0.0};
    const auto psi = oracle::random_signal(s, spec, rng.integer(0, 1 << 30));
    const auto samples = sample_signal(psi, g);
    const auto a_hat = dft_hyperboloid(k, samples, 4 * n);
    const auto& sp = k.spectrum();
    for (int j = 0; j < n; ++j)
      for (int p = 1; p <= 3; ++p) {
        const cplx pred = std::exp(0.5 * (sp.log_lambda(j + p * n) - sp.log_lambda(j))) * a_hat[j];
        CHECK(std::abs(a_hat[j + p * n] - pred) <= 1e-12 * std::abs(pred) + 1e-300);
      }
    const auto back = rescale_truncate(k, a_hat, m);
    for (int i = 0; i <= m; ++i) CHECK(std::abs(back[i] - psi[i]) < 1e-10);
  }
  const CirculantKernel k(kS1, kG2);
  CHECK_THROWS_AS(rescale_truncate(k, std::vector<cplx>(3), 2), InvalidArgument);
  const auto z = rescale_truncate(k, std::vector<cplx>(2), 1);
  CHECK(z[0] == cplx(0.0, 0.0));
}

TEST_CASE("projector elements match the dense projector") {
  oracle::Rng rng(23);
  int checked = 0;
  while (checked < 10) {
    const Sympling s(rng.integer(2, 6));
    const SamplingGrid g(rng.uniform(0.2, 0.9), rng.integer(1, 12));
    const CirculantKernel k(s, g);
    if (k.condition_number() > 1e8) continue;
    ++checked;
    const auto p = oracle::dense_projector(s, g, 40);
    for (int a = 0; a < 40; ++a)
      for (int b = 0; b < 40; ++b) CHECK(std::abs(p.entries(a, b) - projector_elements(k, a, b)) < 1e-10);
  }
}

TEST_CASE("error functional") {
  oracle::Rng rng(31);
  const Sympling s(3);
  const SamplingGrid g(0.6, 5);
  const CirculantKernel k(s, g);
  // sum_k c_k |z_k> expanded in the basis lies in the sampled span
  std::vector<cplx> c(5);
  for (auto& v : c) v = {rng.normal(), rng.normal()};
  std::vector<cplx> a(400);
  for (int n = 0; n < 400; ++n)
    for (int j = 0; j < 5; ++j) a[n] += c[j] * std::conj(basis_fn(s, n, g.disk_point(j)));
  CHECK(error_exact(k, CoeffSignal(s, a)) < 1e-8);

  oracle::SignalSpec spec{oracle::SignalKind::geometric, 0, 0.7};
  const auto psi = oracle::random_signal(s, spec, 9);
  const double e = error_exact(k, psi);
  CHECK(e > 0.0);
  std::vector<cplx> scaled(psi.coefficients().begin(), psi.coefficients().end());
  for (auto& v : scaled) v *= cplx(0.0, -3.0);
  CHECK(error_exact(k, CoeffSignal(s, scaled)) == doctest::Approx(3.0 * e).epsilon(1e-13));

  // against 1 - <psi|P_S|psi> from the dense projector
  const auto p = oracle::dense_projector(s, g, psi.size());
  const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(psi.coefficients().data(), psi.size());
  const double ref = psi.norm2() - (v.adjoint() * p.entries * v)(0, 0).real();
  CHECK(e * e == doctest::Approx(ref).epsilon(1e-8));
  CHECK_THROWS_AS(error_exact(k, CoeffSignal(Sympling(2), {1.0})), InvalidArgument);
}

TEST_CASE("quasi-band profile and error bounds") {
  const CoeffSignal flat(kS1, {1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)});
  CHECK(quasi_band_profile(flat, 1).epsilon_m == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(quasi_band_profile(flat, 2).epsilon_m == 0.0);
  CHECK(quasi_band_profile(flat, 7).epsilon_m == 0.0);
  CHECK_THROWS_AS(quasi_band_profile(CoeffSignal(kS1, {0.0}), 0), InvalidArgument);

  const CirculantKernel k(Sympling(4), SamplingGrid(0.4, 6));
  const double e0 = epsilon_n(k, 0);
  CHECK(error_bound(k, {5, 0.0}) == doctest::Approx(e0 / (1 + e0)).epsilon(1e-15));
  CHECK_THROWS_AS(error_bound(k, {4, 0.1}), InvalidArgument);
  CHECK_THROWS_AS(error_bound_leading(k, {6, 0.1}), InvalidArgument);

  const CirculantKernel tiny(Sympling(4), SamplingGrid(0.01, 6));
  CHECK(error_bound(tiny, {5, 0.2}) == doctest::Approx(0.04).epsilon(1e-9));
  CHECK(error_bound_leading(tiny, {5, 0.2}) == doctest::Approx(0.04).epsilon(1e-9));
}

TEST_CASE("radius estimate") {
  const auto est = max_radius_estimate(Sympling(2), 8, 0.1, 0.01);
  CHECK(est.radius == doctest::Approx(0.611).epsilon(1e-3));
  CHECK_FALSE(est.clamped);
  const auto clamped = max_radius_estimate(Sympling(2), 8, 0.1, 0.0);
  CHECK(clamped.clamped);
  CHECK(clamped.radius < 1.0);
  CHECK(max_radius_estimate(Sympling(2), 8, 0.5, 1e-300).clamped);
  CHECK_THROWS_AS(max_radius_estimate(Sympling(2), 8, 0.01, 0.01), InvalidArgument);
  CHECK_THROWS_AS(max_radius_estimate(Sympling(2), 0, 0.1, 0.01), InvalidArgument);

  // derived variant solves the leading-order bound for r
  for (int twice_s : {2, 3, 6}) {
    for (int n : {2, 5, 9}) {
      const double eps = 0.2, eps_m = 0.05;
      const auto d = max_radius_estimate(Sympling(twice_s), n, eps, eps_m, RadiusBoundVariant::derived);
      const auto p = max_radius_estimate(Sympling(twice_s), n, eps, eps_m, RadiusBoundVariant::printed);
      CHECK(p.radius <= d.radius);
      if (d.clamped) continue;
      const CirculantKernel k(Sympling(twice_s), SamplingGrid(d.radius, n));
      CHECK(error_bound_leading(k, {n - 1, eps_m}) == doctest::Approx(eps * eps).epsilon(1e-10));
    }
  }
}

TEST_CASE("P_M^s curve and critical radius") {
  CHECK(pm_curve(kS1, 0, 0.0) == 1.0);
  CHECK(pm_curve(Sympling(7), 4, 0.0) == 1.0);
  CHECK(pm_curve(kS1, 0, 0.5) == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(pm_curve(kS1, 1, 0.5) == doctest::Approx(0.84375).epsilon(1e-15));
  CHECK_THROWS_AS(pm_curve(kS1, 1, 1.0), InvalidArgument);
  CHECK(critical_radius(kS1, 1) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(critical_radius(Sympling(3), 4) == doctest::Approx(0.8164966).epsilon(1e-7));
  CHECK(critical_radius(kS1, 1000000) > 0.999);
  CHECK_THROWS_AS(critical_radius(kS1, 0), InvalidArgument);

  // negative binomial CDF: P(X <= M) = I_{1-r^2}(2s, M+1)
  for (int twice_s : {2, 3, 10, 100}) {
    for (int m : {0, 3, 50, 2000}) {
      for (double r : {0.1, 0.5, 0.8, 0.95, 0.99}) {
        const double ref = boost::math::ibeta(double(twice_s), m + 1.0, 1 - r * r);
        CHECK(pm_curve(Sympling(twice_s), m, r) == doctest::Approx(ref).epsilon(1e-11));
      }
    }
  }
}
