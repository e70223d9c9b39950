#include "diskdft/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "diskdft/su11.hpp"

namespace diskdft::oracle {
namespace {

using ld = long double;
constexpr ld kPiL = 3.141592653589793238462643383279502884L;

lcplx ring_point(const SamplingGrid& g, int k) {
  const ld th = 2 * kPiL * static_cast<ld>(k) / static_cast<ld>(g.size());
  return std::polar(static_cast<ld>(g.radius()), th);
}

ld log_binom_ld(int twice_s, long n) {
  return std::lgamma(static_cast<ld>(twice_s + n)) - std::lgamma(static_cast<ld>(n + 1)) -
         std::lgamma(static_cast<ld>(twice_s));
}

lcplx int_pow(lcplx b, int e) {
  lcplx acc{1, 0};
  for (int i = 0; i < e; ++i) acc *= b;
  return acc;
}

// T_{kn} = C(2s+n-1,n)^{1/2} (1-r^2)^s r^n e^{-2 pi i kn/N}
LMatrix frame_ld(Sympling s, const SamplingGrid& g, int cols) {
  const int n = g.size();
  const ld r = g.radius();
  const ld pref = std::pow((1 - r) * (1 + r), static_cast<ld>(s.value()));
  LMatrix t(n, cols);
  for (int k = 0; k < n; ++k) {
    for (int m = 0; m < cols; ++m) {
      const ld mag = pref * std::exp(0.5L * log_binom_ld(s.twice(), m) + m * std::log(r));
      const long red = (static_cast<long>(k) * m) % n;
      t(k, m) = std::polar(mag, -2 * kPiL * static_cast<ld>(red) / static_cast<ld>(n));
    }
  }
  return t;
}

lcplx overlap_ld(Sympling s, lcplx z, lcplx w) {
  const ld a = 1 - std::norm(z);
  const ld b = 1 - std::norm(w);
  const ld num = std::pow(a * b, static_cast<ld>(s.value()));
  return num / int_pow(1.0L - w * std::conj(z), s.twice());
}

double gram_condition(const LMatrix& b) {
  Eigen::SelfAdjointEigenSolver<LMatrix> es(b, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return static_cast<double>(ev.maxCoeff() / ev.minCoeff());
}

Eigen::MatrixXcd to_double(const LMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(i, j) = cplx(static_cast<double>(m(i, j).real()), static_cast<double>(m(i, j).imag()));
  return out;
}

Eigen::LLT<LMatrix> factor(const LMatrix& b) {
  Eigen::LLT<LMatrix> llt(b);
  if (llt.info() != Eigen::Success) throw NumericalError("oracle: Gram matrix is not numerically positive definite");
  return llt;
}

}  // namespace

DenseOperator dense_frame(Sympling s, const SamplingGrid& grid, int cols) {
  if (cols < 1) throw InvalidArgument("dense_frame: need L >= 1");
  DenseOperator out{grid.size(), cols, Eigen::MatrixXcd(grid.size(), cols), 1.0};
  for (int k = 0; k < grid.size(); ++k)
    for (int m = 0; m < cols; ++m) out.entries(k, m) = basis_fn(s, m, grid.disk_point(k));
  return out;
}

LMatrix dense_gram(Sympling s, const SamplingGrid& grid) {
  const int n = grid.size();
  LMatrix b(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) b(k, l) = overlap_ld(s, ring_point(grid, k), ring_point(grid, l));
  return b;
}

DenseOperator dense_projector(Sympling s, const SamplingGrid& grid, int cols) {
  if (cols < 1) throw InvalidArgument("dense_projector: need L >= 1");
  const LMatrix b = dense_gram(s, grid);
  const LMatrix t = frame_ld(s, grid, cols);
  const LMatrix x = factor(b).solve(t);
  const LMatrix p = t.adjoint() * x;
  return {cols, cols, to_double(p), gram_condition(b)};
}

DenseOperator dense_gram_inverse(Sympling s, const SamplingGrid& grid) {
  const int n = grid.size();
  const LMatrix b = dense_gram(s, grid);
  const LMatrix inv = factor(b).solve(LMatrix::Identity(n, n));
  return {n, n, to_double(inv), gram_condition(b)};
}

cplx dense_dual_sinc(Sympling s, const SamplingGrid& grid, int k, cplx z) {
  const int n = grid.size();
  if (k < 0 || k >= n) throw InvalidArgument("dense_dual_sinc: k out of range");
  const LMatrix b = dense_gram(s, grid);
  LMatrix e = LMatrix::Zero(n, 1);
  e(k, 0) = 1;
  const LMatrix col = factor(b).solve(e);
  const lcplx zl(z.real(), z.imag());
  lcplx acc{0, 0};
  for (int l = 0; l < n; ++l) acc += col(l, 0) * overlap_ld(s, zl, ring_point(grid, l));
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

void gauss_legendre01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw InvalidArgument("gauss_legendre01: need n >= 1");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  // P_n(x) and P_n'(x) by the three-term recurrence
  auto legendre = [n](ld x, ld& dp) {
    ld p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const ld p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    return p1;
  };
  for (int i = 0; i < n; ++i) {
    ld x = std::cos(kPiL * (i + 0.75L) / (n + 0.5L));
    ld dp = 0;
    for (int it = 0; it < 100; ++it) {
      const ld dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    legendre(x, dp);
    const ld w = 2 / ((1 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = static_cast<double>((1 - x) / 2);
    weights[static_cast<std::size_t>(i)] = static_cast<double>(w / 2);
  }
}

namespace {

cplx quadrature_rule(Sympling s, long m, long mp, int radial, int angular) {
  std::vector<double> t, w;
  gauss_legendre01(radial, t, w);
  cplx total{0.0, 0.0};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double rho = std::sqrt(t[i]);
    const double omt = 1.0 - t[i];
    cplx ring{0.0, 0.0};
    for (int j = 0; j < angular; ++j) {
      const DiskPoint z(rho * unit_root(j, angular));
      ring += basis_fn(s, m, z) * std::conj(basis_fn(s, mp, z));
    }
    // d^2z = (1/2) dt dtheta
    total += w[i] * 0.5 * (2.0 * std::numbers::pi / angular) * ring / (omt * omt);
  }
  return (s.twice() - 1.0) / std::numbers::pi * total;
}

}  // namespace

cplx quadrature_inner(Sympling s, long m, long mp, int radial, int angular) {
  if (m < 0 || mp < 0) throw InvalidArgument("quadrature: indices must be >= 0");
  if (s.twice() < 2) throw InvalidArgument("quadrature: need s >= 1");
  return quadrature_rule(s, m, mp, radial, angular);
}

double quadrature_norm(Sympling s, long m, int radial, int angular) {
  const double full = quadrature_inner(s, m, m, radial, angular).real();
  const double coarse = quadrature_inner(s, m, m, std::max(1, radial / 2), angular).real();
  if (std::abs(full - coarse) > 1e-8) {
    std::ostringstream os;
    os.precision(17);
    os << "quadrature_norm: rule not converged, estimate " << full << " vs " << coarse;
    throw NumericalError(os.str());
  }
  return full;
}

Rng::Rng(std::uint64_t seed) : gen_(seed) {}

double Rng::uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double th = 2.0 * std::numbers::pi * u2;
  spare_ = rad * std::sin(th);
  has_spare_ = true;
  return rad * std::cos(th);
}

int Rng::integer(int lo, int hi) {
  const int v = lo + static_cast<int>(uniform() * (hi - lo + 1));
  return std::min(v, hi);
}

cplx random_disk_point(Rng& rng, double rmax) {
  const double rad = rmax * std::sqrt(rng.uniform());
  return std::polar(rad, 2.0 * std::numbers::pi * rng.uniform());
}

int geometric_length(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw InvalidArgument("geometric signal: need 0 < rho < 1");
  int len = static_cast<int>(std::floor(std::log(1e-12) / std::log(rho))) + 1;
  while (std::pow(rho, len) >= 1e-12) ++len;
  return len;
}

double geometric_epsilon(double rho, int band_limit, int length) {
  if (band_limit + 1 >= length) return 0.0;
  const double q = rho * rho;
  const double head = std::pow(q, band_limit + 1);
  const double all = std::pow(q, length);
  return std::sqrt((head - all) / (1.0 - all));
}

CoeffSignal random_signal(Sympling s, const SignalSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cplx> a;
  if (spec.kind == SignalKind::bandlimited) {
    if (spec.band_limit < 0) throw InvalidArgument("random_signal: band limit must be >= 0");
    a.resize(static_cast<std::size_t>(spec.band_limit) + 1);
    double norm2 = 0.0;
    for (auto& c : a) {
      const double re = rng.normal();
      const double im = rng.normal();
      c = {re, im};
      norm2 += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& c : a) c *= inv;
  } else {
    const int len = geometric_length(spec.rho);
    a.resize(static_cast<std::size_t>(len));
    double mag = 1.0;
    for (auto& c : a) {
      c = std::polar(mag, 2.0 * std::numbers::pi * rng.uniform());
      mag *= spec.rho;
    }
  }
  return CoeffSignal(s, std::move(a));
}

}  // namespace diskdft::oracle
