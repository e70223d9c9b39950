#pragma once

/// \file frame.hpp
/// Oversampled (bandlimited) path: the frame operator T restricted to band
/// limit M < N, its diagonal resolution operator A = T*T, the sinc-type
/// reconstruction kernel and exact Fourier-coefficient recovery.

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "diskdft/dft.hpp"
#include "diskdft/su11.hpp"

namespace diskdft {

/// T_{kn} = lambda_n^{1/2} e^{-2 pi i kn/N} / sqrt(N), k < N, n <= M.
///
/// Held in factored form (diagonal times rectangular Fourier); dense()
/// materializes it for inspection.
class FrameMatrix {
 public:
  FrameMatrix(Sympling s, SamplingGrid grid, int band_limit);

  Sympling sympling() const noexcept { return spectrum_.sympling(); }
  const SamplingGrid& grid() const noexcept { return spectrum_.grid(); }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  int band_limit() const noexcept { return band_limit_; }
  int rows() const noexcept { return grid().size(); }
  int cols() const noexcept { return band_limit_ + 1; }

  cplx entry(int k, int n) const;
  std::span<const double> sqrt_lambda() const noexcept { return sqrt_lambda_; }

  Eigen::MatrixXcd dense() const;

  /// T a for coefficients a_0..a_M.
  std::vector<cplx> apply(std::span<const cplx> coeffs) const;
  /// T* Psi for N samples.
  std::vector<cplx> apply_adjoint(std::span<const cplx> samples) const;

  /// max lambda / min lambda over n = 0..M.
  double condition_number() const noexcept { return condition_; }
  bool ill_conditioned() const noexcept { return condition_ > kIllConditioned; }

  const DftPlan& plan() const noexcept { return *plan_; }

 private:
  Spectrum spectrum_;
  int band_limit_;
  std::vector<double> sqrt_lambda_;
  double condition_;
  std::shared_ptr<const DftPlan> plan_;
};

/// Throws InvalidArgument ("band limit too large") when M >= N.
FrameMatrix frame_matrix(Sympling s, const SamplingGrid& grid, int band_limit);

/// lambda_0..lambda_M, the diagonal of A = T*T.
std::vector<double> resolution_diagonal(const FrameMatrix& fm);

/// A = T*T formed explicitly from the entries, for verification.
Eigen::MatrixXcd resolution_operator(const FrameMatrix& fm);

/// Xi_k(z) = (1/N) ((1-|z|^2)/(1-r^2))^s sum_{m<=M} (conj(z)/conj(z_k))^m
cplx sinc_kernel(const FrameMatrix& fm, int k, DiskPoint z);

/// Precomputed sum_k Xi_k(z) Psi(z_k): one backward DFT of the samples turns
/// the kernel sum into a degree-M polynomial in conj(z)/r.
class BandlimitedInterpolant {
 public:
  BandlimitedInterpolant(const FrameMatrix& fm, std::span<const cplx> samples);

  cplx operator()(DiskPoint z) const;
  std::vector<cplx> evaluate(std::span<const DiskPoint> points) const;

 private:
  Sympling s_;
  double r_;
  double log_one_minus_r2_;
  std::vector<cplx> poly_;
};

cplx reconstruct_bandlimited(const FrameMatrix& fm, std::span<const cplx> samples, DiskPoint z);
std::vector<cplx> reconstruct_bandlimited(const FrameMatrix& fm, std::span<const cplx> samples,
                                          std::span<const DiskPoint> points);

/// a_m = (N lambda_m)^{-1/2} sum_k e^{2 pi i km/N} Psi(z_k), m = 0..M.
std::vector<cplx> fourier_coeffs_from_samples(const FrameMatrix& fm, std::span<const cplx> samples);

/// P = T (T*T)^{-1} T*, the orthogonal projector onto the range of T in C^N.
Eigen::MatrixXcd sample_space_projector(const FrameMatrix& fm);

}  // namespace diskdft
