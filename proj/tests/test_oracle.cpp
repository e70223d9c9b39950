#include <doctest.h>

#include <cmath>

#include "diskdft/oracle.hpp"
#include "diskdft/undersampling.hpp"

using namespace diskdft;

TEST_CASE("dense frame fixture and column norms") {
  const SamplingGrid g(0.5, 2);
  const auto t = oracle::dense_frame(Sympling(2), g, 4);
  CHECK(t.rows == 2);
  CHECK(t.cols == 4);
  CHECK(std::abs(t.entries(0, 0) - 0.75) < 1e-16);
  const Spectrum sp(Sympling(2), g);
  for (int n = 0; n < 4; ++n) CHECK(t.entries.col(n).squaredNorm() == doctest::Approx(sp.lambda(n)).epsilon(1e-14));
  CHECK_THROWS_AS(oracle::dense_frame(Sympling(2), g, 0), InvalidArgument);
}

TEST_CASE("dense projector laws") {
  for (int n : {1, 3, 6}) {
    const SamplingGrid g(0.7, n);
    const auto p = oracle::dense_projector(Sympling(3), g, 96);
    CHECK((p.entries * p.entries - p.entries).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((p.entries - p.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(p.entries.trace().real() == doctest::Approx(double(n)).epsilon(1e-8));
  }
}

TEST_CASE("dense inverse matches the circulant inverse") {
  const SamplingGrid g(0.5, 2);
  const auto inv = oracle::dense_gram_inverse(Sympling(2), g);
  CHECK(inv.entries(0, 0).real() == doctest::Approx(1.1488970588235294).epsilon(1e-14));
  CHECK(inv.entries(0, 1).real() == doctest::Approx(-0.41360294117647056).epsilon(1e-13));
  const SamplingGrid g7(0.65, 7);
  const auto ref = oracle::dense_gram_inverse(Sympling(5), g7);
  const auto fast = invert_kernel(CirculantKernel(Sympling(5), g7));
  CHECK((ref.entries - fast.matrix).cwiseAbs().maxCoeff() < 1e-12 * fast.condition);
}

TEST_CASE("Gauss-Legendre rule on [0,1]") {
  std::vector<double> x, w;
  oracle::gauss_legendre01(20, x, w);
  for (int p = 0; p < 40; ++p) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], p);
    CHECK(acc == doctest::Approx(1.0 / (p + 1)).epsilon(1e-14));
  }
}

TEST_CASE("disk quadrature of the basis") {
  CHECK(std::abs(oracle::quadrature_norm(Sympling(2), 0) - 1.0) < 1e-8);
  CHECK(std::abs(oracle::quadrature_norm(Sympling(4), 3) - 1.0) < 1e-8);
  CHECK(std::abs(oracle::quadrature_norm(Sympling(3), 2) - 1.0) < 1e-8);
  CHECK(std::abs(oracle::quadrature_inner(Sympling(2), 1, 3)) < 1e-8);
  CHECK(std::abs(oracle::quadrature_inner(Sympling(4), 0, 5)) < 1e-8);
  CHECK_THROWS_AS(oracle::quadrature_norm(Sympling(2), 12, 4, 8), NumericalError);
}

TEST_CASE("signal generators") {
  const oracle::SignalSpec bl{oracle::SignalKind::bandlimited, 5, 0.0};
  const auto a = oracle::random_signal(Sympling(3), bl, 42);
  const auto b = oracle::random_signal(Sympling(3), bl, 42);
  CHECK(a.size() == 6);
  CHECK(a.norm2() == doctest::Approx(1.0).epsilon(1e-15));
  for (int i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  CHECK(oracle::random_signal(Sympling(3), bl, 43)[0] != a[0]);
  CHECK(oracle::random_signal(Sympling(2), {oracle::SignalKind::bandlimited, 0, 0.0}, 1).size() == 1);

  for (double rho : {0.1, 0.5, 0.9}) {
    const oracle::SignalSpec geo{oracle::SignalKind::geometric, 0, rho};
    const auto g = oracle::random_signal(Sympling(2), geo, 7);
    const int len = oracle::geometric_length(rho);
    CHECK(g.size() == len);
    CHECK(std::pow(rho, len) < 1e-12);
    CHECK(std::pow(rho, len - 1) >= 1e-12);
    for (int m : {0, 1, 4}) {
      CHECK(quasi_band_profile(g, m).epsilon_m ==
            doctest::Approx(oracle::geometric_epsilon(rho, m, len)).epsilon(1e-12));
    }
  }
  const auto g = oracle::random_signal(Sympling(2), {oracle::SignalKind::geometric, 0, 0.5}, 3);
  CHECK(quasi_band_profile(g, 3).epsilon_m == doctest::Approx(std::pow(0.5, 4)).epsilon(1e-10));
}

TEST_CASE("rng streams are reproducible") {
  oracle::Rng a(1), b(1);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  oracle::Rng c(2);
  for (int i = 0; i < 100; ++i) {
    const int v = c.integer(3, 5);
    CHECK(v >= 3);
    CHECK(v <= 5);
  }
}
