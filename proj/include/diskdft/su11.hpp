#pragma once

/// \file su11.hpp
/// Primitives of the sympling-s discrete series on the disk: binomials,
/// basis functions U^s_m(z), coherent-state overlaps, the ring spectrum
/// lambda_n and evaluation/sampling of coefficient signals.
///
/// Basis functions keep the non-analytic prefactor (1-|z|^2)^s; the disk
/// measure is never reweighted to absorb it.

#include <span>
#include <vector>

#include "diskdft/types.hpp"

namespace diskdft {

/// ln C(a+b, b) for integers a, b >= 0.
double log_binom_int(long a, long b);

/// ln C(2s+n-1, n) = ln[Gamma(2s+n) / (Gamma(n+1) Gamma(2s))]; exactly 0 at n = 0.
double log_binom(Sympling s, long n);

/// Integer power of a complex number by repeated squaring.
cplx ipow(cplx base, long e);

/// U^s_m(z) = C(2s+m-1, m)^{1/2} (1-|z|^2)^s conj(z)^m
cplx basis_fn(Sympling s, long m, DiskPoint z);

/// <z|w> = (1-|z|^2)^s (1-|w|^2)^s / (1 - w conj(z))^{2s}
cplx overlap(Sympling s, DiskPoint z, DiskPoint w);

/// lambda_n = N (1-r^2)^{2s} C(2s+n-1, n) r^{2n}, held in log form.
///
/// Values for n below `eager` are tabulated at construction; larger indices
/// are computed on the fly, so a shared Spectrum needs no synchronization.
class Spectrum {
 public:
  Spectrum(Sympling s, SamplingGrid grid, int eager = 0);

  Sympling sympling() const noexcept { return s_; }
  const SamplingGrid& grid() const noexcept { return grid_; }

  double log_lambda(long n) const;

  /// exp(log_lambda(n)); throws RangeError if that leaves the normal range.
  double lambda(long n) const;
  double sqrt_lambda(long n) const;

 private:
  Sympling s_;
  SamplingGrid grid_;
  double log_base_;  // ln N + 2s ln(1-r^2)
  double log_r2_;
  std::vector<double> table_;
};

double lambda_n(Sympling s, const SamplingGrid& grid, long n);

/// Psi(z) = sum_m a_m U^s_m(z)
cplx signal_eval(const CoeffSignal& psi, DiskPoint z);

/// Psi(z_k) on the grid: weighted coefficients folded by residue mod N,
/// then one forward DFT of length N.
std::vector<cplx> sample_signal(const CoeffSignal& psi, const SamplingGrid& grid);

}  // namespace diskdft
