#include "diskdft/undersampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "diskdft/simd/kernels.hpp"
#include "extended_dft.hpp"
#include "series.hpp"

namespace diskdft {
namespace {

// Above this length the row DFT runs in double precision.
constexpr int kExtendedDftLimit = 1024;

// ln epsilon_j = ln sum_{u>=1} lambda_{j+uN}/lambda_j
double log_tail_ratio(const Spectrum& sp, long j, long first) {
  const long n = sp.grid().size();
  const double base = sp.log_lambda(j);
  return detail::log_sum_series([&](long u) { return sp.log_lambda(j + u * n) - base; }, first);
}

struct RowDft {
  std::vector<cplx> row;
  std::vector<double> eig;
  double imag = 0.0;
  double floor = 0.0;  // absolute accuracy of eig
};

RowDft row_dft(Sympling s, const SamplingGrid& g) {
  const int n = g.size();
  RowDft out;
  if (n <= kExtendedDftLimit) {
    auto x = detail::circulant_row_dft_extended(s.twice(), g.radius(), n);
    out.row = std::move(x.first_row);
    out.eig = std::move(x.eigenvalues);
    out.imag = x.imag_residue;
    out.floor = 64.0 * n * detail::extended_unit_roundoff() * x.row_abs_max;
    return out;
  }
  const double r2 = g.radius() * g.radius();
  out.row.resize(static_cast<std::size_t>(n));
  double amax = 0.0;
  for (int l = 0; l < n; ++l) {
    const cplx d = 1.0 - r2 * unit_root(l, n);
    out.row[static_cast<std::size_t>(l)] = ipow(g.one_minus_r2() / d, s.twice());
    amax = std::max(amax, std::abs(out.row[static_cast<std::size_t>(l)]));
  }
  const auto f = DftPlan::get(n)->forward(out.row);
  out.eig.resize(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    out.eig[j] = f[j].real();
    out.imag = std::max(out.imag, std::abs(f[j].imag()));
  }
  out.floor = 64.0 * n * std::numeric_limits<double>::epsilon() * amax;
  return out;
}

void check_k(const CirculantKernel& kernel, int k) {
  if (k < 0 || k >= kernel.size()) throw InvalidArgument("kernel index k out of range");
}

void check_samples(const CirculantKernel& kernel, std::span<const cplx> samples) {
  if (samples.size() != static_cast<std::size_t>(kernel.size())) {
    throw InvalidArgument("expected " + std::to_string(kernel.size()) + " samples, got " +
                          std::to_string(samples.size()));
  }
}

double prefactor(const CirculantKernel& kernel, DiskPoint z) {
  return std::exp(kernel.sympling().value() *
                  (std::log(z.one_minus_norm2()) - std::log(kernel.grid().one_minus_r2())));
}

inline std::size_t residue(long n, int nn) { return static_cast<std::size_t>(n % nn); }

}  // namespace

CirculantKernel::CirculantKernel(Sympling s, SamplingGrid grid)
    : spectrum_(s, std::move(grid)), plan_(DftPlan::get(spectrum_.grid().size())) {
  const int n = size();
  auto dft = row_dft(s, spectrum_.grid());
  first_row_ = std::move(dft.row);
  eigenvalues_ = std::move(dft.eig);
  imag_residue_ = dft.imag;

  epsilon_.resize(static_cast<std::size_t>(n));
  log_eigenvalues_.resize(static_cast<std::size_t>(n));
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int j = 0; j < n; ++j) {
    const double le = log_tail_ratio(spectrum_, j, 1);
    const double eps = std::exp(le);
    epsilon_[static_cast<std::size_t>(j)] = eps;
    const double ll = spectrum_.log_lambda(j) + std::log1p(eps);
    log_eigenvalues_[static_cast<std::size_t>(j)] = ll;
    lo = std::min(lo, ll);
    hi = std::max(hi, ll);

    const double a = eigenvalues_[static_cast<std::size_t>(j)];
    const double b = std::exp(ll);
    const double diff = std::abs(a - b);
    if (b > 0.0) disagreement_ = std::max(disagreement_, diff / b);
    if (diff > kEigenvalueAgreementTol * b && diff > dft.floor) {
      throw NumericalError("kernel eigenvalues: DFT and series disagree at j=" + std::to_string(j));
    }
  }
  condition_ = std::exp(hi - lo);
}

double CirculantKernel::log_eigenvalue(int j) const {
  if (j < 0 || j >= size()) throw InvalidArgument("eigenvalue index out of range");
  return log_eigenvalues_[static_cast<std::size_t>(j)];
}

Eigen::MatrixXcd CirculantKernel::assemble() const {
  const int n = size();
  Eigen::MatrixXcd b(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) b(k, l) = first_row_[static_cast<std::size_t>(((l - k) % n + n) % n)];
  return b;
}

CirculantKernel overlap_kernel(Sympling s, const SamplingGrid& grid) { return CirculantKernel(s, grid); }

std::vector<double> kernel_eigenvalues_dft(Sympling s, const SamplingGrid& grid, double* imag_residue) {
  auto d = row_dft(s, grid);
  if (imag_residue) *imag_residue = d.imag;
  return std::move(d.eig);
}

std::vector<double> kernel_eigenvalues_series(Sympling s, const SamplingGrid& grid) {
  const Spectrum sp(s, grid);
  std::vector<double> out(static_cast<std::size_t>(grid.size()));
  for (int j = 0; j < grid.size(); ++j) {
    out[static_cast<std::size_t>(j)] = std::exp(sp.log_lambda(j) + log_tail_ratio(sp, j, 0));
  }
  return out;
}

std::vector<double> kernel_eigenvalues(const CirculantKernel& kernel) {
  const auto e = kernel.eigenvalues();
  return {e.begin(), e.end()};
}

KernelInverse invert_kernel(const CirculantKernel& kernel) {
  const int n = kernel.size();
  std::vector<cplx> inv(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double le = kernel.log_eigenvalue(j);
    const double v = std::exp(-le);
    if (!std::isfinite(v)) throw RangeError("invert_kernel: 1/lambda_hat overflows", -le);
    inv[static_cast<std::size_t>(j)] = v;
  }
  // g_d = (1/N) sum_j lambda_hat_j^{-1} e^{2 pi i j d/N}, (B^{-1})_{lk} = g_{(k-l) mod N}
  auto g = kernel.plan().backward(inv);
  for (auto& v : g) v /= static_cast<double>(n);
  KernelInverse out{Eigen::MatrixXcd(n, n), kernel.condition_number(), kernel.ill_conditioned()};
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k) out.matrix(l, k) = g[static_cast<std::size_t>(((k - l) % n + n) % n)];
  return out;
}

cplx dual_sinc_kernel(const CirculantKernel& kernel, int k, DiskPoint z) {
  check_k(kernel, k);
  const auto& sp = kernel.spectrum();
  const int nn = kernel.size();
  const double r = kernel.grid().radius();
  const double pref = prefactor(kernel, z) / nn;
  const double az = std::abs(z.value());
  if (az == 0.0) return pref * std::exp(sp.log_lambda(0) - kernel.log_eigenvalue(0));

  double log_min = kernel.log_eigenvalue(0);
  for (int j = 1; j < nn; ++j) log_min = std::min(log_min, kernel.log_eigenvalue(j));

  // u^n = rho^n * phase^n
  const double log_rho = std::log(az / r);
  const cplx step = std::conj(z.value()) / az * unit_root(k, nn);
  const double tol = series_tolerance();
  const double s2 = kernel.sympling().twice();
  cplx acc{0.0, 0.0};
  double scale = 0.0;
  cplx phase{1.0, 0.0};
  for (long n = 0;; ++n) {
    if (n > detail::kMaxSeriesTerms) throw NumericalError("dual_sinc_kernel: no convergence");
    const double lt = sp.log_lambda(n) - kernel.log_eigenvalue(static_cast<int>(n % nn)) + n * log_rho;
    const double t = std::exp(lt);
    acc += t * phase;
    scale += t;
    phase *= step;
    // majorant lambda_{n+1}/lambda_hat_min rho^{n+1} with ratio bound q
    const double q = r * az * (s2 + n + 1) / (n + 2);
    const double m_next = std::exp(sp.log_lambda(n + 1) - log_min + (n + 1) * log_rho);
    if (q < 1.0 && m_next / (1.0 - q) <= tol * scale) break;
  }
  return pref * acc;
}

cplx dual_sinc_kernel_inverse_sum(const CirculantKernel& kernel, int k, DiskPoint z) {
  check_k(kernel, k);
  const int nn = kernel.size();
  const auto inv = invert_kernel(kernel);
  const auto& pts = kernel.grid().points();
  const double scale = std::exp(kernel.sympling().value() *
                                (std::log(z.one_minus_norm2()) + std::log(kernel.grid().one_minus_r2())));
  std::vector<cplx> ov(static_cast<std::size_t>(nn));
  simd::active_kernels().inv_pow_row(kernel.sympling().twice(), std::conj(z.value()), pts.data(), scale,
                                     ov.data(), ov.size());
  cplx acc{0.0, 0.0};
  for (int l = 0; l < nn; ++l) acc += inv.matrix(l, k) * ov[static_cast<std::size_t>(l)];
  return acc;
}

cplx dual_sinc_kernel_sectioned(const CirculantKernel& kernel, int k, DiskPoint z) {
  check_k(kernel, k);
  const int nn = kernel.size();
  const auto& g = kernel.grid();
  // lambda_n u^n = N (1-r^2)^{2s} C(2s+n-1,n) v^n with v = conj(z) z_k
  const cplx v = std::conj(z.value()) * g.point(k);
  std::vector<cplx> roots(static_cast<std::size_t>(nn));
  for (int l = 0; l < nn; ++l) roots[static_cast<std::size_t>(l)] = unit_root(l, nn);
  std::vector<cplx> row(static_cast<std::size_t>(nn));
  simd::active_kernels().inv_pow_row(kernel.sympling().twice(), v, roots.data(), 1.0, row.data(), row.size());
  const auto sec = kernel.plan().forward(row);
  cplx acc{0.0, 0.0};
  for (int j = 0; j < nn; ++j) acc += sec[static_cast<std::size_t>(j)] * std::exp(-kernel.log_eigenvalue(j));
  const double log_pref = kernel.sympling().value() * (std::log(z.one_minus_norm2()) + std::log(g.one_minus_r2()));
  return std::exp(log_pref) / static_cast<double>(nn) * acc;
}

PartialReconstruction::PartialReconstruction(const CirculantKernel& kernel, std::span<const cplx> samples)
    : kernel_(&kernel), max_abs_(0.0) {
  check_samples(kernel, samples);
  const int nn = kernel.size();
  data_ = kernel.plan().backward(samples);
  for (auto& d : data_) {
    d /= static_cast<double>(nn);
    max_abs_ = std::max(max_abs_, std::abs(d));
  }
  log_weight_.resize(static_cast<std::size_t>(nn));
  for (int j = 0; j < nn; ++j) log_weight_[static_cast<std::size_t>(j)] = kernel.log_eigenvalue(j);
}

int PartialReconstruction::degree_for(double abs_z) const {
  const auto& sp = kernel_->spectrum();
  const int nn = kernel_->size();
  const double r = kernel_->grid().radius();
  if (abs_z == 0.0 || max_abs_ == 0.0) return 0;
  const double log_min = *std::min_element(log_weight_.begin(), log_weight_.end());
  const double log_rho = std::log(abs_z / r);
  const double log_dmax = std::log(max_abs_);
  const double tol = series_tolerance();
  const double s2 = kernel_->sympling().twice();
  double scale = 0.0;
  for (long n = 0;; ++n) {
    if (n > detail::kMaxSeriesTerms) throw NumericalError("partial_reconstruct: no convergence");
    const auto j = residue(n, nn);
    scale += std::exp(sp.log_lambda(n) - log_weight_[j] + n * log_rho) * std::abs(data_[j]);
    const double q = r * abs_z * (s2 + n + 1) / (n + 2);
    const double m_next = std::exp(sp.log_lambda(n + 1) - log_min + (n + 1) * log_rho + log_dmax);
    if (q < 1.0 && m_next / (1.0 - q) <= tol * scale) return static_cast<int>(n);
  }
}

cplx PartialReconstruction::operator()(DiskPoint z) const {
  const std::span<const DiskPoint> one(&z, 1);
  return evaluate(one).front();
}

std::vector<cplx> PartialReconstruction::evaluate(std::span<const DiskPoint> points) const {
  std::vector<cplx> out(points.size());
  if (points.empty()) return out;
  const auto& sp = kernel_->spectrum();
  const int nn = kernel_->size();
  const double r = kernel_->grid().radius();

  int degree = 0;
  std::vector<cplx> x(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    x[p] = std::conj(points[p].value()) / r;
    degree = std::max(degree, degree_for(std::abs(points[p].value())));
  }
  // psi_hat(z) = P(z) sum_n (lambda_n/lambda_hat_j) D_j/N (conj z/r)^n, j = n mod N
  std::vector<cplx> coeffs(static_cast<std::size_t>(degree) + 1);
  for (long n = 0; n <= degree; ++n) {
    const auto j = residue(n, nn);
    coeffs[static_cast<std::size_t>(n)] = std::exp(sp.log_lambda(n) - log_weight_[j]) * data_[j];
  }
  simd::active_kernels().horner(coeffs.data(), coeffs.size(), x.data(), out.data(), out.size());
  for (std::size_t p = 0; p < points.size(); ++p) out[p] *= prefactor(*kernel_, points[p]);
  return out;
}

cplx partial_reconstruct(const CirculantKernel& kernel, std::span<const cplx> samples, DiskPoint z) {
  return PartialReconstruction(kernel, samples)(z);
}

std::vector<cplx> partial_reconstruct(const CirculantKernel& kernel, std::span<const cplx> samples,
                                      std::span<const DiskPoint> points) {
  return PartialReconstruction(kernel, samples).evaluate(points);
}

std::vector<cplx> dft_hyperboloid(const CirculantKernel& kernel, std::span<const cplx> samples, int n_max) {
  if (n_max < 0) throw InvalidArgument("dft_hyperboloid: n_max must be >= 0");
  check_samples(kernel, samples);
  const int nn = kernel.size();
  const auto d = kernel.plan().backward(samples);
  const double log_sqrt_n = 0.5 * std::log(static_cast<double>(nn));
  const auto& sp = kernel.spectrum();
  std::vector<cplx> out(static_cast<std::size_t>(n_max) + 1);
  for (long n = 0; n <= n_max; ++n) {
    const auto j = residue(n, nn);
    const double w = std::exp(0.5 * sp.log_lambda(n) - kernel.log_eigenvalue(static_cast<int>(j)) - log_sqrt_n);
    out[static_cast<std::size_t>(n)] = w * d[j];
  }
  return out;
}

CoeffSignal rescale_truncate(const CirculantKernel& kernel, std::span<const cplx> a_hat, int band_limit) {
  if (band_limit < 0) throw InvalidArgument("rescale_truncate: band limit must be >= 0");
  if (band_limit >= kernel.size()) throw InvalidArgument("rescale_truncate: need M < N");
  if (a_hat.size() < static_cast<std::size_t>(band_limit) + 1) {
    throw InvalidArgument("rescale_truncate: need at least M+1 coefficients");
  }
  const auto eps = kernel.tail_ratios();
  std::vector<cplx> a(static_cast<std::size_t>(band_limit) + 1);
  for (std::size_t n = 0; n < a.size(); ++n) a[n] = (1.0 + eps[n]) * a_hat[n];
  return CoeffSignal(kernel.sympling(), std::move(a));
}

double projector_elements(const CirculantKernel& kernel, long m, long n) {
  if (m < 0 || n < 0) throw InvalidArgument("projector_elements: indices must be >= 0");
  const int nn = kernel.size();
  if (m % nn != n % nn) return 0.0;
  const auto& sp = kernel.spectrum();
  return std::exp(0.5 * (sp.log_lambda(m) + sp.log_lambda(n)) - kernel.log_eigenvalue(static_cast<int>(n % nn)));
}

double epsilon_n(const CirculantKernel& kernel, int n) {
  if (n < 0 || n >= kernel.size()) throw InvalidArgument("epsilon_n: need 0 <= n < N");
  return kernel.tail_ratios()[static_cast<std::size_t>(n)];
}

QuasiBandProfile quasi_band_profile(const CoeffSignal& psi, int band_limit) {
  if (band_limit < 0) throw InvalidArgument("quasi_band_profile: band limit must be >= 0");
  const double total = psi.norm2();
  if (total == 0.0) throw InvalidArgument("quasi_band_profile: zero signal");
  double tail = 0.0;
  for (int n = band_limit + 1; n < psi.size(); ++n) tail += std::norm(psi[n]);
  return {band_limit, std::sqrt(tail / total)};
}

double error_exact(const CirculantKernel& kernel, const CoeffSignal& psi) {
  if (psi.sympling() != kernel.sympling()) throw InvalidArgument("error_exact: sympling mismatch");
  const int nn = kernel.size();
  const long len = psi.size();
  const auto& sp = kernel.spectrum();
  double e2 = 0.0;
  std::vector<double> w;
  std::vector<cplx> v;
  for (long j = 0; j < std::min<long>(nn, len); ++j) {
    const double lh = kernel.log_eigenvalue(static_cast<int>(j));
    w.clear();
    v.clear();
    double vnorm = 0.0;
    for (long n = j; n < len; n += nn) {
      w.push_back(std::exp(0.5 * (sp.log_lambda(n) - lh)));
      v.push_back(psi[static_cast<int>(n)]);
      vnorm += std::norm(v.back());
    }
    // <v|(I - w w^T)|v> with |w|^2 = 1 - T: Lagrange identity plus the unstored tail
    double block = 0.0;
    for (std::size_t p = 0; p < v.size(); ++p)
      for (std::size_t q = p + 1; q < v.size(); ++q) block += std::norm(w[p] * v[q] - w[q] * v[p]);
    const long first = static_cast<long>(v.size());
    const double log_t =
        detail::log_sum_series([&](long q) { return sp.log_lambda(j + q * nn) - lh; }, first);
    block += vnorm * std::exp(log_t);
    e2 += block;
  }
  return std::sqrt(e2);
}

namespace {

void check_bound_regime(const CirculantKernel& kernel, const QuasiBandProfile& profile) {
  if (profile.band_limit != kernel.size() - 1) {
    throw InvalidArgument("error bound is only established for M = N-1 (M=" +
                          std::to_string(profile.band_limit) + ", N=" + std::to_string(kernel.size()) + ")");
  }
  if (!(profile.epsilon_m >= 0.0 && profile.epsilon_m < 1.0)) {
    throw InvalidArgument("error bound: epsilon_M must lie in [0,1)");
  }
}

}  // namespace

double error_bound(const CirculantKernel& kernel, const QuasiBandProfile& profile) {
  check_bound_regime(kernel, profile);
  const int nn = kernel.size();
  const double em = profile.epsilon_m;
  const double e0 = epsilon_n(kernel, 0);
  const double elast = epsilon_n(kernel, nn - 1);
  const double c = 1.0 - em * em;
  return em * em + c * e0 / (1.0 + e0) + 2.0 * std::sqrt(c) * em * std::sqrt(nn * e0) / (1.0 + elast);
}

double error_bound_leading(const CirculantKernel& kernel, const QuasiBandProfile& profile) {
  check_bound_regime(kernel, profile);
  const int nn = kernel.size();
  const double em = profile.epsilon_m;
  const double lg = 0.5 * log_binom(kernel.sympling(), nn) + nn * std::log(kernel.grid().radius());
  return em * em + std::sqrt(1.0 - em * em) * em * std::sqrt(static_cast<double>(nn)) * std::exp(lg);
}

RadiusEstimate max_radius_estimate(Sympling s, int n_samples, double epsilon, double epsilon_m,
                                   RadiusBoundVariant variant) {
  if (n_samples < 1) throw InvalidArgument("radius estimate: N must be >= 1");
  if (!(epsilon_m >= 0.0 && epsilon_m < 1.0)) throw InvalidArgument("radius estimate: epsilon_M must lie in [0,1)");
  if (!(epsilon > epsilon_m)) throw InvalidArgument("radius estimate: need epsilon > epsilon_M");
  const RadiusEstimate clamp{std::nextafter(1.0, 0.0), true};
  if (epsilon_m == 0.0) return clamp;
  const double nn = n_samples;
  double log_raw = std::log(epsilon - epsilon_m) + std::log(epsilon + epsilon_m) -
                   0.5 * (std::log1p(-epsilon_m * epsilon_m) + std::log(nn)) - std::log(epsilon_m);
  if (variant == RadiusBoundVariant::printed) {
    log_raw -= std::log(2.0) + log_binom(s, n_samples);
  } else {
    log_raw -= 0.5 * log_binom(s, n_samples);
  }
  log_raw /= nn;
  if (log_raw >= 0.0) return clamp;
  return {std::exp(log_raw), false};
}

double pm_curve(Sympling s, int band_limit, double r) {
  if (band_limit < 0) throw InvalidArgument("pm_curve: band limit must be >= 0");
  if (!(r >= 0.0 && r < 1.0)) throw InvalidArgument("pm_curve: need 0 <= r < 1");
  if (r == 0.0) return 1.0;
  const double lp = 2.0 * std::log(r);
  const double lbase = s.twice() * std::log1p(-r * r);
  auto log_term = [&](long m) { return lbase + log_binom(s, m) + m * lp; };
  double head = 0.0;
  for (long m = 0; m <= band_limit; ++m) head += std::exp(log_term(m));
  if (head <= 0.5) return head;
  // 1 - tail keeps full relative accuracy near 1
  const double tail = std::exp(detail::log_sum_series(log_term, band_limit + 1L));
  return std::min(1.0, 1.0 - tail);
}

double critical_radius(Sympling s, int band_limit) {
  if (band_limit < 1) throw InvalidArgument("critical_radius: need M >= 1");
  return 1.0 / std::sqrt(1.0 + (s.twice() - 1.0) / band_limit);
}

}  // namespace diskdft
