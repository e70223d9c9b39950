#include "diskdft/su11.hpp"

#include <cfloat>
#include <cmath>

#include "diskdft/dft.hpp"

namespace diskdft {
namespace {

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

constexpr long kProductLimit = 64;

}  // namespace

double log_binom_int(long a, long b) {
  if (a < 0 || b < 0) throw InvalidArgument("log_binom: negative argument");
  if (a == 0 || b == 0) return 0.0;
  const long lo = std::min(a, b);
  const long hi = std::max(a, b);
  if (lo <= kProductLimit) {
    // C(hi+lo, lo) = prod_{i=1..lo} (1 + hi/i)
    double acc = 0.0;
    for (long i = 1; i <= lo; ++i) {
      acc += std::log1p(static_cast<double>(hi) / static_cast<double>(i));
    }
    return acc;
  }
  return log_gamma(static_cast<double>(hi + lo + 1)) - log_gamma(static_cast<double>(hi + 1)) -
         log_gamma(static_cast<double>(lo + 1));
}

double log_binom(Sympling s, long n) {
  if (n < 0) throw InvalidArgument("log_binom: n must be >= 0");
  return log_binom_int(s.twice() - 1, n);
}

cplx ipow(cplx base, long e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  cplx acc{1.0, 0.0};
  while (e > 0) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

cplx basis_fn(Sympling s, long m, DiskPoint z) {
  if (m < 0) throw InvalidArgument("basis_fn: m must be >= 0");
  const double a = std::hypot(z.re(), z.im());
  const double log_pref = s.value() * std::log(z.one_minus_norm2());
  if (m == 0) return {std::exp(log_pref), 0.0};
  if (a == 0.0) return {0.0, 0.0};
  const double mag = std::exp(0.5 * log_binom(s, m) + log_pref + static_cast<double>(m) * std::log(a));
  return mag * ipow(std::conj(z.value()) / a, m);
}

cplx overlap(Sympling s, DiskPoint z, DiskPoint w) {
  const double num = std::exp(s.value() * (std::log(z.one_minus_norm2()) + std::log(w.one_minus_norm2())));
  const cplx den = ipow(1.0 - w.value() * std::conj(z.value()), s.twice());
  return num / den;
}

Spectrum::Spectrum(Sympling s, SamplingGrid grid, int eager)
    : s_(s),
      grid_(std::move(grid)),
      log_base_(std::log(static_cast<double>(grid_.size())) +
                static_cast<double>(s.twice()) * std::log(grid_.one_minus_r2())),
      log_r2_(2.0 * std::log(grid_.radius())) {
  if (eager > 0) {
    table_.reserve(static_cast<std::size_t>(eager));
    for (int n = 0; n < eager; ++n) {
      table_.push_back(log_base_ + log_binom(s_, n) + static_cast<double>(n) * log_r2_);
    }
  }
}

double Spectrum::log_lambda(long n) const {
  if (n < 0) throw InvalidArgument("spectrum: negative index");
  if (static_cast<std::size_t>(n) < table_.size()) return table_[static_cast<std::size_t>(n)];
  return log_base_ + log_binom(s_, n) + static_cast<double>(n) * log_r2_;
}

double Spectrum::lambda(long n) const {
  const double lg = log_lambda(n);
  const double v = std::exp(lg);
  if (!(v >= DBL_MIN) || !std::isfinite(v)) {
    throw RangeError("lambda_n outside the normal double range", lg);
  }
  return v;
}

double Spectrum::sqrt_lambda(long n) const {
  const double lg = 0.5 * log_lambda(n);
  const double v = std::exp(lg);
  if (!(v >= DBL_MIN) || !std::isfinite(v)) {
    throw RangeError("sqrt(lambda_n) outside the normal double range", lg);
  }
  return v;
}

double lambda_n(Sympling s, const SamplingGrid& grid, long n) { return Spectrum(s, grid).lambda(n); }

cplx signal_eval(const CoeffSignal& psi, DiskPoint z) {
  const Sympling s = psi.sympling();
  const double a = std::hypot(z.re(), z.im());
  const double pref = std::exp(s.value() * std::log(z.one_minus_norm2()));
  const auto coeffs = psi.coefficients();
  cplx acc = coeffs[0];
  if (a > 0.0) {
    const double log_a = std::log(a);
    const cplx step = std::conj(z.value()) / a;
    cplx phase{1.0, 0.0};
    for (std::size_t m = 1; m < coeffs.size(); ++m) {
      phase *= step;
      const auto mm = static_cast<long>(m);
      const double mag = std::exp(0.5 * log_binom(s, mm) + static_cast<double>(mm) * log_a);
      acc += coeffs[m] * (mag * phase);
    }
  }
  return pref * acc;
}

std::vector<cplx> sample_signal(const CoeffSignal& psi, const SamplingGrid& grid) {
  const Sympling s = psi.sympling();
  const int n = grid.size();
  const double log_r = std::log(grid.radius());
  std::vector<cplx> folded(static_cast<std::size_t>(n));
  const auto coeffs = psi.coefficients();
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    if (coeffs[m] == cplx{}) continue;
    const auto mm = static_cast<long>(m);
    const double w = std::exp(0.5 * log_binom(s, mm) + static_cast<double>(mm) * log_r);
    folded[m % static_cast<std::size_t>(n)] += w * coeffs[m];
  }
  auto out = DftPlan::get(n)->forward(folded);
  const double pref = std::exp(s.value() * std::log(grid.one_minus_r2()));
  for (auto& v : out) v *= pref;
  return out;
}

}  // namespace diskdft
