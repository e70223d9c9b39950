#include "diskdft/dft.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "diskdft/simd/kernels.hpp"

namespace diskdft {
namespace {

constexpr int kMinFft = 32;
constexpr int kMaxCachedMatrix = 256;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

DftPlan::DftPlan(int n) : n_(n), fft_(is_pow2(n) && n >= kMinFft) {
  if (n < 1) throw InvalidArgument("dft: length must be positive");
  roots_.resize(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) roots_[static_cast<std::size_t>(m)] = unit_root(-m, n);

  if (fft_) {
    int bits = 0;
    while ((1 << bits) < n) ++bits;
    bitrev_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      int r = 0;
      for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
      bitrev_[static_cast<std::size_t>(i)] = r;
    }
    // stage of length len uses roots e^{-2 pi i t/len}, t < len/2
    stage_tw_.reserve(static_cast<std::size_t>(n));
    for (int len = 2; len <= n; len <<= 1) {
      const int stride = n / len;
      for (int t = 0; t < len / 2; ++t) {
        stage_tw_.push_back(roots_[static_cast<std::size_t>(t * stride)]);
      }
    }
  } else if (n <= kMaxCachedMatrix) {
    matrix_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      std::int64_t idx = 0;
      for (int k = 0; k < n; ++k) {
        matrix_[static_cast<std::size_t>(j) * n + k] = roots_[static_cast<std::size_t>(idx)];
        idx += j;
        if (idx >= n) idx -= n;
      }
    }
  }
}

std::shared_ptr<const DftPlan> DftPlan::get(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const DftPlan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto plan = std::make_shared<const DftPlan>(n);
  cache.emplace(n, plan);
  return plan;
}

void DftPlan::forward_impl(cplx* data) const {
  const auto& kern = simd::active_kernels();
  const auto n = static_cast<std::size_t>(n_);
  if (fft_) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto j = static_cast<std::size_t>(bitrev_[i]);
      if (i < j) std::swap(data[i], data[j]);
    }
    std::size_t offset = 0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half = len / 2;
      for (std::size_t start = 0; start < n; start += len) {
        kern.butterfly(data + start, data + start + half, stage_tw_.data() + offset, half);
      }
      offset += half;
    }
    return;
  }
  std::vector<cplx> in(data, data + n);
  if (!matrix_.empty()) {
    for (std::size_t j = 0; j < n; ++j) data[j] = kern.cdot(in.data(), matrix_.data() + j * n, n);
    return;
  }
  std::vector<cplx> row(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < n; ++k) {
      row[k] = roots_[idx];
      idx += j;
      if (idx >= n) idx -= n;
    }
    data[j] = kern.cdot(in.data(), row.data(), n);
  }
}

void DftPlan::forward(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != static_cast<std::size_t>(n_) || out.size() != in.size()) {
    throw InvalidArgument("dft: length mismatch");
  }
  std::vector<cplx> buf(in.begin(), in.end());
  forward_impl(buf.data());
  std::copy(buf.begin(), buf.end(), out.begin());
}

std::vector<cplx> DftPlan::forward(std::span<const cplx> in) const {
  std::vector<cplx> out(in.size());
  forward(in, out);
  return out;
}

void DftPlan::backward(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != static_cast<std::size_t>(n_) || out.size() != in.size()) {
    throw InvalidArgument("dft: length mismatch");
  }
  std::vector<cplx> buf(in.size());
  std::transform(in.begin(), in.end(), buf.begin(), [](cplx v) { return std::conj(v); });
  forward_impl(buf.data());
  std::transform(buf.begin(), buf.end(), out.begin(), [](cplx v) { return std::conj(v); });
}

std::vector<cplx> DftPlan::backward(std::span<const cplx> in) const {
  std::vector<cplx> out(in.size());
  backward(in, out);
  return out;
}

}  // namespace diskdft
