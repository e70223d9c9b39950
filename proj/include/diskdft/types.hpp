#pragma once

/// \file types.hpp
/// Value types shared by every diskdft module: the representation index,
/// points of the open unit disk, ring sampling grids and coefficient signals.

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace diskdft {

using cplx = std::complex<double>;

/// Raised when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation leaves the representable range of doubles,
/// fails to converge, or two independent evaluation routes disagree.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponentiation of a log-domain quantity over- or underflowed.
/// The log value is kept so callers can continue in log space.
class RangeError : public NumericalError {
 public:
  RangeError(const std::string& what, double log_value)
      : NumericalError(what), log_value_(log_value) {}
  double log_value() const noexcept { return log_value_; }

 private:
  double log_value_;
};

/// Discrete-series index s = 1, 3/2, 2, ... stored exactly as the integer 2s.
class Sympling {
 public:
  explicit Sympling(int twice_s);

  int twice() const noexcept { return twice_; }
  double value() const noexcept { return 0.5 * twice_; }

  friend bool operator==(Sympling, Sympling) = default;

 private:
  int twice_;
};

/// A point of the open unit disk.
class DiskPoint {
 public:
  DiskPoint(double re, double im);
  explicit DiskPoint(cplx z) : DiskPoint(z.real(), z.imag()) {}

  double re() const noexcept { return re_; }
  double im() const noexcept { return im_; }
  cplx value() const noexcept { return {re_, im_}; }
  double norm2() const noexcept { return re_ * re_ + im_ * im_; }

  double one_minus_norm2() const noexcept;

 private:
  double re_;
  double im_;
};

/// e^{2 pi i k / n} from the exact rational angle k/n.
///
/// The angle is reduced to the first octant with integer arithmetic, so
/// quarter turns are exact and conjugate/rotational symmetries hold bit for bit.
cplx unit_root(std::int64_t k, std::int64_t n);

/// N points r e^{2 pi i k/N} on a circle of radius r, 0 < r < 1.
class SamplingGrid {
 public:
  SamplingGrid(double r, int n_samples);

  double radius() const noexcept { return r_; }
  int size() const noexcept { return n_; }

  /// 1 - r^2 without cancellation.
  double one_minus_r2() const noexcept { return one_minus_r2_; }

  cplx point(int k) const;
  DiskPoint disk_point(int k) const { return DiskPoint(point(k)); }
  const std::vector<cplx>& points() const noexcept { return points_; }

 private:
  double r_;
  int n_;
  double one_minus_r2_;
  std::vector<cplx> points_;
};

/// Fourier coefficients a_0..a_{L-1} of a signal in the sympling-s space.
class CoeffSignal {
 public:
  CoeffSignal(Sympling s, std::vector<cplx> coefficients);

  Sympling sympling() const noexcept { return s_; }
  std::span<const cplx> coefficients() const noexcept { return a_; }
  int size() const noexcept { return static_cast<int>(a_.size()); }
  cplx operator[](int n) const { return a_[static_cast<std::size_t>(n)]; }

  /// Sum of |a_n|^2.
  double norm2() const noexcept;

 private:
  Sympling s_;
  std::vector<cplx> a_;
};

/// Relative threshold used by every truncated infinite series (default 1e-16).
double series_tolerance() noexcept;
void set_series_tolerance(double tol);

/// Relative tolerance for the agreement between the DFT-of-row and series
/// routes to the circulant eigenvalues.
inline constexpr double kEigenvalueAgreementTol = 1e-12;

/// Condition numbers above this are reported as ill-conditioned.
inline constexpr double kIllConditioned = 1e12;

}  // namespace diskdft
