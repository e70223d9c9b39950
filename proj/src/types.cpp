#include "diskdft/types.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

namespace diskdft {

Sympling::Sympling(int twice_s) : twice_(twice_s) {
  if (twice_s < 2) {
    throw InvalidArgument("sympling: 2s must be an integer >= 2, got " +
                          std::to_string(twice_s));
  }
}

DiskPoint::DiskPoint(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im) || re * re + im * im >= 1.0) {
    throw InvalidArgument("disk point outside the open unit disk");
  }
}

double DiskPoint::one_minus_norm2() const noexcept {
  // (1 - |z|)(1 + |z|) keeps relative accuracy as |z| -> 1
  const double a = std::hypot(re_, im_);
  return (1.0 - a) * (1.0 + a);
}

cplx unit_root(std::int64_t k, std::int64_t n) {
  if (n <= 0) throw InvalidArgument("unit_root: n must be positive");
  k %= n;
  if (k < 0) k += n;
  // 4k = q n + rem, angle inside the quadrant is (pi/2) rem / n
  const std::int64_t q = (4 * k) / n;
  const std::int64_t rem = 4 * k - q * n;
  double c = 0.0;
  double s = 0.0;
  if (2 * rem <= n) {
    const double t = std::numbers::pi * 0.5 * static_cast<double>(rem) / static_cast<double>(n);
    c = std::cos(t);
    s = std::sin(t);
  } else {
    const double t =
        std::numbers::pi * 0.5 * static_cast<double>(n - rem) / static_cast<double>(n);
    c = std::sin(t);
    s = std::cos(t);
  }
  switch (q) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

SamplingGrid::SamplingGrid(double r, int n_samples) : r_(r), n_(n_samples) {
  if (!(r > 0.0 && r < 1.0)) {
    throw InvalidArgument("sampling grid: radius must lie in (0,1)");
  }
  if (n_samples < 1) {
    throw InvalidArgument("sampling grid: need at least one sample");
  }
  one_minus_r2_ = (1.0 - r) * (1.0 + r);
  points_.reserve(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) points_.push_back(r_ * unit_root(k, n_));
}

cplx SamplingGrid::point(int k) const {
  if (k < 0 || k >= n_) throw InvalidArgument("sampling grid: index out of range");
  return points_[static_cast<std::size_t>(k)];
}

CoeffSignal::CoeffSignal(Sympling s, std::vector<cplx> coefficients)
    : s_(s), a_(std::move(coefficients)) {
  if (a_.empty()) throw InvalidArgument("signal: coefficient list is empty");
  for (const auto& c : a_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidArgument("signal: non-finite coefficient");
    }
  }
}

double CoeffSignal::norm2() const noexcept {
  double acc = 0.0;
  for (const auto& c : a_) acc += std::norm(c);
  return acc;
}

namespace {
std::atomic<double> g_series_tol{1e-16};
}

double series_tolerance() noexcept { return g_series_tol.load(std::memory_order_relaxed); }

void set_series_tolerance(double tol) {
  if (!(tol > 0.0 && tol < 1e-3)) {
    throw InvalidArgument("series tolerance must lie in (0, 1e-3)");
  }
  g_series_tol.store(tol, std::memory_order_relaxed);
}

}  // namespace diskdft
