#pragma once

/// \file oracle.hpp
/// Brute-force references for the test suite. Nothing here uses the circulant
/// structure, the factored frame or the DFT: operators are materialized from
/// basis functions and overlaps in long double and inverted by a dense
/// Hermitian (Cholesky) solve.

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "diskdft/types.hpp"

namespace diskdft::oracle {

using lcplx = std::complex<long double>;
using LMatrix = Eigen::Matrix<lcplx, Eigen::Dynamic, Eigen::Dynamic>;

struct DenseOperator {
  int rows = 0;
  int cols = 0;
  Eigen::MatrixXcd entries;
  /// Condition estimate of the Gram matrix that was inverted; 1 if none.
  double condition = 1.0;
};

/// T_{kn} = U^s_n(z_k), k < N, n < L.
DenseOperator dense_frame(Sympling s, const SamplingGrid& grid, int cols);

/// Gram matrix B_{kl} = <z_k|z_l> straight from the overlap formula.
LMatrix dense_gram(Sympling s, const SamplingGrid& grid);

/// P_S = T* B^{-1} T restricted to n, m < L.
DenseOperator dense_projector(Sympling s, const SamplingGrid& grid, int cols);

/// sum_l (B^{-1})_{lk} <z|z_l> via a dense solve.
cplx dense_dual_sinc(Sympling s, const SamplingGrid& grid, int k, cplx z);

/// Direct dense inverse of B.
DenseOperator dense_gram_inverse(Sympling s, const SamplingGrid& grid);

/// (2s-1)/pi \int |U_m(z)|^2 (1-|z|^2)^{-2} d^2z, which is 1 exactly.
/// Tensor rule: Gauss-Legendre in t = |z|^2 times the trapezoid rule in the angle.
double quadrature_norm(Sympling s, long m, int radial = 200, int angular = 256);

/// (2s-1)/pi \int U_m conj(U_mp) (1-|z|^2)^{-2} d^2z with the same rule.
cplx quadrature_inner(Sympling s, long m, long mp, int radial = 200, int angular = 256);

/// Nodes and weights of the n-point Gauss-Legendre rule on [0,1].
void gauss_legendre01(int n, std::vector<double>& nodes, std::vector<double>& weights);

enum class SignalKind { bandlimited, geometric };

struct SignalSpec {
  SignalKind kind = SignalKind::bandlimited;
  int band_limit = 0;  ///< bandlimited: M, giving M+1 coefficients
  double rho = 0.5;    ///< geometric: |a_n| = rho^n
};

/// Bandlimited: complex Gaussian coefficients scaled to unit norm.
/// Geometric: a_n = rho^n e^{i theta_n}, theta_n uniform, n < L with rho^L < 1e-12.
CoeffSignal random_signal(Sympling s, const SignalSpec& spec, std::uint64_t seed);

/// Number of stored coefficients of a geometric signal.
int geometric_length(double rho);

/// sqrt((rho^{2(M+1)} - rho^{2L}) / (1 - rho^{2L}))
double geometric_epsilon(double rho, int band_limit, int length);

/// mt19937_64 with hand-rolled uniform and Box-Muller transforms, so streams
/// are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();  ///< [0,1)
  double normal();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi);  ///< inclusive

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Uniform point of the disk of radius rmax.
cplx random_disk_point(Rng& rng, double rmax = 0.95);

}  // namespace diskdft::oracle
