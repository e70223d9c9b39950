#pragma once

// Truncation policy shared by the infinite sums: stop once the discarded tail,
// bounded by a geometric majorant, is below series_tolerance() times the
// partial sum.

#include <cmath>
#include <limits>

#include "diskdft/types.hpp"

namespace diskdft::detail {

inline constexpr long kMaxSeriesTerms = 50'000'000;

/// ln sum_{i >= first} exp(log_term(i)) for positive terms whose successive
/// ratios t_{i+1}/t_i are non-increasing in i.
template <class LogTerm>
double log_sum_series(LogTerm&& log_term, long first) {
  const double tol = series_tolerance();
  const double l0 = log_term(first);
  if (l0 == -std::numeric_limits<double>::infinity()) return l0;
  if (!std::isfinite(l0)) throw NumericalError("series: non-finite leading term");
  double ref = l0;   // acc is measured in units of exp(ref)
  double acc = 1.0;
  double lprev = l0;
  for (long i = first + 1;; ++i) {
    if (i - first > kMaxSeriesTerms) throw NumericalError("series: no convergence within term limit");
    const double l = log_term(i);
    if (l == -std::numeric_limits<double>::infinity()) break;
    const double q = std::exp(l - lprev);
    if (l > ref) {
      acc *= std::exp(ref - l);
      ref = l;
    }
    const double rel = std::exp(l - ref);
    // terms from i on are bounded by t_i / (1 - q)
    if (q < 1.0 && rel / (1.0 - q) <= tol * acc) break;
    acc += rel;
    lprev = l;
  }
  return ref + std::log(acc);
}

}  // namespace diskdft::detail
