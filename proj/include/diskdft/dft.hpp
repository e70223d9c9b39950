#pragma once

/// \file dft.hpp
/// Length-N complex DFT used by the ring sampling formulas.
///
/// Power-of-two lengths of at least 32 run an iterative radix-2 FFT; every
/// other length is a direct O(N^2) sum. Twiddles always come from unit_root,
/// so both paths see the same exactly-reduced roots of unity.

#include <memory>
#include <span>
#include <vector>

#include "diskdft/types.hpp"

namespace diskdft {

class DftPlan {
 public:
  explicit DftPlan(int n);

  /// Shared, immutable plan for length n.
  static std::shared_ptr<const DftPlan> get(int n);

  int size() const noexcept { return n_; }
  bool uses_fft() const noexcept { return fft_; }

  /// out_j = sum_k in_k e^{-2 pi i jk/N}
  void forward(std::span<const cplx> in, std::span<cplx> out) const;
  std::vector<cplx> forward(std::span<const cplx> in) const;

  /// out_j = sum_k in_k e^{+2 pi i jk/N}; no 1/N factor.
  void backward(std::span<const cplx> in, std::span<cplx> out) const;
  std::vector<cplx> backward(std::span<const cplx> in) const;

 private:
  void forward_impl(cplx* data) const;

  int n_;
  bool fft_;
  std::vector<cplx> roots_;     // e^{-2 pi i m/N}, m < N
  std::vector<cplx> matrix_;    // cached direct-DFT rows for small N
  std::vector<cplx> stage_tw_;  // contiguous per-stage FFT twiddles
  std::vector<int> bitrev_;
};

}  // namespace diskdft
