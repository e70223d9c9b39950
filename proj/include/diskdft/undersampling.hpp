#pragma once

/// \file undersampling.hpp
/// Band-unlimited path. The N x N Gram matrix B of the ring coherent states
/// is circulant, B_{kl} = C_{(l-k) mod N}, and is diagonalized by the DFT.
/// Its inverse yields the dual pseudo-frame, the orthogonal projector P_S onto
/// the span of the sampled states, the partial reconstruction psi_hat = P_S psi
/// and the hyperboloid DFT a_hat_n = <s,n|P_S|psi>. Error analysis, the
/// radius estimate and the critical-radius curve live here as well.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "diskdft/dft.hpp"
#include "diskdft/su11.hpp"

namespace diskdft {

/// Circulant overlap kernel of a ring grid.
///
/// Eigenvalues are the DFT of the first row, evaluated in extended precision
/// so that small eigenvalues keep their relative accuracy. Construction also
/// sums the series lambda_hat_j = sum_q lambda_{j+qN} and throws
/// NumericalError if the two routes disagree beyond kEigenvalueAgreementTol.
class CirculantKernel {
 public:
  CirculantKernel(Sympling s, SamplingGrid grid);

  Sympling sympling() const noexcept { return spectrum_.sympling(); }
  const SamplingGrid& grid() const noexcept { return spectrum_.grid(); }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  int size() const noexcept { return grid().size(); }

  /// C_l = ((1-r^2)/(1-r^2 e^{2 pi i l/N}))^{2s}
  std::span<const cplx> first_row() const noexcept { return first_row_; }
  /// lambda_hat_0..lambda_hat_{N-1} from the DFT of the first row.
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  /// ln lambda_hat_j = ln lambda_j + log1p(epsilon_j); finite even when
  /// lambda_hat_j underflows.
  double log_eigenvalue(int j) const;
  /// epsilon_j = (lambda_hat_j - lambda_j)/lambda_j from the tail series.
  std::span<const double> tail_ratios() const noexcept { return epsilon_; }

  /// Largest imaginary part left by the row DFT.
  double dft_imaginary_residue() const noexcept { return imag_residue_; }
  /// max_j |A_j - B_j| / A_j between the DFT and series eigenvalues.
  double eigenvalue_disagreement() const noexcept { return disagreement_; }

  /// max lambda_hat / min lambda_hat (log domain).
  double condition_number() const noexcept { return condition_; }
  bool ill_conditioned() const noexcept { return condition_ > kIllConditioned; }

  /// B_{kl} = C_{(l-k) mod N}
  Eigen::MatrixXcd assemble() const;

  const DftPlan& plan() const noexcept { return *plan_; }

 private:
  Spectrum spectrum_;
  std::vector<cplx> first_row_;
  std::vector<double> eigenvalues_;
  std::vector<double> log_eigenvalues_;
  std::vector<double> epsilon_;
  double imag_residue_ = 0.0;
  double disagreement_ = 0.0;
  double condition_ = 1.0;
  std::shared_ptr<const DftPlan> plan_;
};

CirculantKernel overlap_kernel(Sympling s, const SamplingGrid& grid);

/// Method A: DFT of the first row (extended precision). Returns the real
/// parts; `imag_residue` receives the largest discarded imaginary part.
std::vector<double> kernel_eigenvalues_dft(Sympling s, const SamplingGrid& grid,
                                           double* imag_residue = nullptr);
/// Method B: lambda_hat_j = sum_q lambda_{j+qN} truncated by the series policy.
std::vector<double> kernel_eigenvalues_series(Sympling s, const SamplingGrid& grid);

/// Eigenvalues of B (method A), verified against method B.
std::vector<double> kernel_eigenvalues(const CirculantKernel& kernel);

struct KernelInverse {
  Eigen::MatrixXcd matrix;
  double condition;
  bool ill_conditioned;
};

/// (B^{-1})_{lk} = (1/N) sum_j lambda_hat_j^{-1} e^{2 pi i j(k-l)/N}
KernelInverse invert_kernel(const CirculantKernel& kernel);

/// Xi_hat_k(z) = <z|z_tilde_k>.
///
/// Evaluated as (1/N) ((1-|z|^2)/(1-r^2))^s sum_n w_n u^n with
/// w_n = lambda_n / lambda_hat_{n mod N} in (0,1] and u = conj(z) e^{2 pi i k/N}/r.
/// The weights are normalized per residue class, so the sum stays accurate
/// however small the eigenvalues of B become.
cplx dual_sinc_kernel(const CirculantKernel& kernel, int k, DiskPoint z);

/// sum_l (B^{-1})_{lk} <z|z_l>; accuracy degrades like cond(B) * eps.
cplx dual_sinc_kernel_inverse_sum(const CirculantKernel& kernel, int k, DiskPoint z);

/// The same series with each residue class summed in closed form:
/// sum_{n = j mod N} C(2s+n-1,n) v^n = (1/N) sum_l w^{-jl} (1 - w^l v)^{-2s}.
cplx dual_sinc_kernel_sectioned(const CirculantKernel& kernel, int k, DiskPoint z);

/// psi_hat = P_S psi evaluated from the N samples, reusable across points.
class PartialReconstruction {
 public:
  PartialReconstruction(const CirculantKernel& kernel, std::span<const cplx> samples);

  cplx operator()(DiskPoint z) const;
  std::vector<cplx> evaluate(std::span<const DiskPoint> points) const;

 private:
  int degree_for(double abs_z) const;

  const CirculantKernel* kernel_;
  std::vector<cplx> data_;   // D_j / (N lambda_hat_j) scaled, see .cpp
  std::vector<double> log_weight_;
  double max_abs_;
};

cplx partial_reconstruct(const CirculantKernel& kernel, std::span<const cplx> samples, DiskPoint z);
std::vector<cplx> partial_reconstruct(const CirculantKernel& kernel, std::span<const cplx> samples,
                                      std::span<const DiskPoint> points);

/// a_hat_n = (lambda_n^{1/2} / lambda_hat_{n mod N}) N^{-1/2} sum_k e^{2 pi i nk/N} Psi(z_k)
std::vector<cplx> dft_hyperboloid(const CirculantKernel& kernel, std::span<const cplx> samples,
                                  int n_max);

/// Truncate to n <= M and undo the filter: a_n = (lambda_hat_n/lambda_n) a_hat_n.
CoeffSignal rescale_truncate(const CirculantKernel& kernel, std::span<const cplx> a_hat, int band_limit);

/// <s,m|P_S|s,n> = (lambda_m lambda_n)^{1/2} / lambda_hat_{n mod N} if m = n mod N, else 0.
double projector_elements(const CirculantKernel& kernel, long m, long n);

/// epsilon_n = (lambda_hat_n - lambda_n)/lambda_n, 0 <= n < N.
double epsilon_n(const CirculantKernel& kernel, int n);

struct QuasiBandProfile {
  int band_limit;
  double epsilon_m;
};

/// epsilon_M = sqrt(sum_{n>M} |a_n|^2 / sum_n |a_n|^2) over the stored coefficients.
QuasiBandProfile quasi_band_profile(const CoeffSignal& psi, int band_limit);

/// E_psi = sqrt(<psi|(I - P_S)|psi>), computed blockwise in coefficient
/// space without subtractive cancellation.
double error_exact(const CirculantKernel& kernel, const CoeffSignal& psi);

/// Normalized squared-error bound
///   eps_M^2 + (1-eps_M^2) e_0/(1+e_0) + 2 sqrt(1-eps_M^2) eps_M sqrt(N e_0)/(1+e_{N-1})
/// with e_n = epsilon_n. Only defined for M = N-1.
double error_bound(const CirculantKernel& kernel, const QuasiBandProfile& profile);

/// Leading-order form eps_M^2 + sqrt(1-eps_M^2) eps_M sqrt(N) C(2s+N-1,N)^{1/2} r^N.
double error_bound_leading(const CirculantKernel& kernel, const QuasiBandProfile& profile);

enum class RadiusBoundVariant {
  printed,  ///< factor 2 and a plain binomial in the denominator
  derived,  ///< solves the leading-order bound exactly: no factor 2, binomial^{1/2}
};

struct RadiusEstimate {
  double radius;
  bool clamped;  ///< raw value was >= 1 and has been clamped into (0,1)
};

/// Upper radius for a target normalized error epsilon > epsilon_M:
/// ((eps^2 - eps_M^2) / (2 sqrt((1-eps_M^2) N) eps_M C(2s+N-1,N)))^{1/N} for
/// the printed variant.
RadiusEstimate max_radius_estimate(Sympling s, int n_samples, double epsilon, double epsilon_m,
                                   RadiusBoundVariant variant = RadiusBoundVariant::printed);

/// P_M^s(r) = (1-r^2)^{2s} sum_{m<=M} C(2s+m-1,m) r^{2m}, r in [0,1).
double pm_curve(Sympling s, int band_limit, double r);

/// r_c = (1 + (2s-1)/M)^{-1/2}, M >= 1.
double critical_radius(Sympling s, int band_limit);

}  // namespace diskdft
