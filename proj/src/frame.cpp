#include "diskdft/frame.hpp"

#include <algorithm>
#include <cmath>

#include "diskdft/simd/kernels.hpp"

namespace diskdft {
namespace {

void check_samples(const FrameMatrix& fm, std::span<const cplx> samples) {
  if (samples.size() != static_cast<std::size_t>(fm.rows())) {
    throw InvalidArgument("frame: expected " + std::to_string(fm.rows()) + " samples, got " +
                          std::to_string(samples.size()));
  }
}

}  // namespace

FrameMatrix::FrameMatrix(Sympling s, SamplingGrid grid, int band_limit)
    : spectrum_(s, std::move(grid), band_limit + 1), band_limit_(band_limit) {
  if (band_limit < 0) throw InvalidArgument("frame: band limit must be >= 0");
  if (band_limit >= spectrum_.grid().size()) {
    throw InvalidArgument("band limit too large: need M < N (M=" + std::to_string(band_limit) +
                          ", N=" + std::to_string(spectrum_.grid().size()) + ")");
  }
  sqrt_lambda_.reserve(static_cast<std::size_t>(band_limit + 1));
  double lo = spectrum_.log_lambda(0);
  double hi = lo;
  for (int n = 0; n <= band_limit; ++n) {
    sqrt_lambda_.push_back(spectrum_.sqrt_lambda(n));
    lo = std::min(lo, spectrum_.log_lambda(n));
    hi = std::max(hi, spectrum_.log_lambda(n));
  }
  condition_ = std::exp(hi - lo);
  plan_ = DftPlan::get(spectrum_.grid().size());
}

cplx FrameMatrix::entry(int k, int n) const {
  if (k < 0 || k >= rows() || n < 0 || n >= cols()) throw InvalidArgument("frame: entry out of range");
  const int nn = rows();
  const auto idx = (static_cast<std::int64_t>(k) * n) % nn;
  return sqrt_lambda_[static_cast<std::size_t>(n)] / std::sqrt(static_cast<double>(nn)) *
         unit_root(-idx, nn);
}

Eigen::MatrixXcd FrameMatrix::dense() const {
  Eigen::MatrixXcd t(rows(), cols());
  for (int k = 0; k < rows(); ++k)
    for (int n = 0; n < cols(); ++n) t(k, n) = entry(k, n);
  return t;
}

std::vector<cplx> FrameMatrix::apply(std::span<const cplx> coeffs) const {
  if (coeffs.size() != static_cast<std::size_t>(cols())) throw InvalidArgument("frame: coefficient count mismatch");
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(rows()));
  std::vector<cplx> buf(static_cast<std::size_t>(rows()));
  for (std::size_t n = 0; n < coeffs.size(); ++n) buf[n] = sqrt_lambda_[n] * inv_sqrt_n * coeffs[n];
  return plan_->forward(buf);
}

std::vector<cplx> FrameMatrix::apply_adjoint(std::span<const cplx> samples) const {
  check_samples(*this, samples);
  const auto d = plan_->backward(samples);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(rows()));
  std::vector<cplx> out(static_cast<std::size_t>(cols()));
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = sqrt_lambda_[n] * inv_sqrt_n * d[n];
  return out;
}

FrameMatrix frame_matrix(Sympling s, const SamplingGrid& grid, int band_limit) {
  return FrameMatrix(s, grid, band_limit);
}

std::vector<double> resolution_diagonal(const FrameMatrix& fm) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(fm.cols()));
  for (int n = 0; n < fm.cols(); ++n) out.push_back(fm.spectrum().lambda(n));
  return out;
}

Eigen::MatrixXcd resolution_operator(const FrameMatrix& fm) {
  const Eigen::MatrixXcd t = fm.dense();
  return t.adjoint() * t;
}

cplx sinc_kernel(const FrameMatrix& fm, int k, DiskPoint z) {
  const auto& g = fm.grid();
  if (k < 0 || k >= g.size()) throw InvalidArgument("sinc_kernel: k out of range");
  // conj(z)/conj(z_k) = conj(z) e^{2 pi i k/N} / r
  const cplx u = std::conj(z.value()) * unit_root(k, g.size()) / g.radius();
  cplx acc{0.0, 0.0};
  for (int m = 0; m <= fm.band_limit(); ++m) acc = acc * u + 1.0;
  const double pref =
      std::exp(fm.sympling().value() * (std::log(z.one_minus_norm2()) - std::log(g.one_minus_r2())));
  return pref / static_cast<double>(g.size()) * acc;
}

BandlimitedInterpolant::BandlimitedInterpolant(const FrameMatrix& fm, std::span<const cplx> samples)
    : s_(fm.sympling()),
      r_(fm.grid().radius()),
      log_one_minus_r2_(std::log(fm.grid().one_minus_r2())) {
  check_samples(fm, samples);
  const auto d = fm.plan().backward(samples);
  const double inv_n = 1.0 / static_cast<double>(fm.rows());
  poly_.resize(static_cast<std::size_t>(fm.cols()));
  for (std::size_t m = 0; m < poly_.size(); ++m) poly_[m] = d[m] * inv_n;
}

cplx BandlimitedInterpolant::operator()(DiskPoint z) const {
  const std::span<const DiskPoint> one(&z, 1);
  return evaluate(one).front();
}

std::vector<cplx> BandlimitedInterpolant::evaluate(std::span<const DiskPoint> points) const {
  std::vector<cplx> x(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) x[p] = std::conj(points[p].value()) / r_;
  std::vector<cplx> out(points.size());
  simd::active_kernels().horner(poly_.data(), poly_.size(), x.data(), out.data(), out.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    out[p] *= std::exp(s_.value() * (std::log(points[p].one_minus_norm2()) - log_one_minus_r2_));
  }
  return out;
}

cplx reconstruct_bandlimited(const FrameMatrix& fm, std::span<const cplx> samples, DiskPoint z) {
  return BandlimitedInterpolant(fm, samples)(z);
}

std::vector<cplx> reconstruct_bandlimited(const FrameMatrix& fm, std::span<const cplx> samples,
                                          std::span<const DiskPoint> points) {
  return BandlimitedInterpolant(fm, samples).evaluate(points);
}

std::vector<cplx> fourier_coeffs_from_samples(const FrameMatrix& fm, std::span<const cplx> samples) {
  check_samples(fm, samples);
  const auto d = fm.plan().backward(samples);
  const double sqrt_n = std::sqrt(static_cast<double>(fm.rows()));
  std::vector<cplx> a(static_cast<std::size_t>(fm.cols()));
  for (std::size_t m = 0; m < a.size(); ++m) a[m] = d[m] / (sqrt_n * fm.sqrt_lambda()[m]);
  return a;
}

Eigen::MatrixXcd sample_space_projector(const FrameMatrix& fm) {
  // T A^{-1} T* = F F* with F the rectangular Fourier factor; the lambdas cancel.
  const int n = fm.rows();
  Eigen::MatrixXcd p(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      cplx acc{0.0, 0.0};
      for (int m = 0; m < fm.cols(); ++m) {
        acc += unit_root(-static_cast<std::int64_t>(k - l) * m, n);
      }
      p(k, l) = acc / static_cast<double>(n);
    }
  }
  return p;
}

}  // namespace diskdft
