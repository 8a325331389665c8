#include "mindrace/fft.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "mindrace/kernels.hpp"

namespace mindrace {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
  if (n == 0) throw std::invalid_argument("fft: zero length");
  if (pow2_) {
    bitrev_.resize(n);
    std::size_t log2n = 0;
    while ((std::size_t{1} << log2n) < n) ++log2n;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < log2n; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
      bitrev_[i] = r;
    }
    twiddles_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double a = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
      twiddles_[k] = {std::cos(a), std::sin(a)};
    }
  } else if (n > 1) {
    conv_n_ = next_pow2(2 * n - 1);
    conv_plan_ = std::make_shared<FftPlan>(conv_n_);
    chirp_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      // angle = -pi k^2 / n, with k^2 reduced mod 2n to keep precision
      const unsigned long long k2 = (static_cast<unsigned long long>(k) * k) % (2 * n);
      const double a = -kPi * static_cast<double>(k2) / static_cast<double>(n);
      chirp_[k] = {std::cos(a), std::sin(a)};
    }
    std::vector<std::complex<double>> b(conv_n_, {0.0, 0.0});
    b[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) {
      b[k] = std::conj(chirp_[k]);
      b[conv_n_ - k] = std::conj(chirp_[k]);
    }
    conv_plan_->forward(b.data());
    chirp_fft_ = std::move(b);
  }
}

void FftPlan::forward_pow2(std::complex<double>* x) const {
  const std::size_t n = n_;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = bitrev_[i];
    if (j > i) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t step = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> w = twiddles_[k * step];
        const std::complex<double> u = x[start + k];
        const std::complex<double> t = w * x[start + k + half];
        x[start + k] = u + t;
        x[start + k + half] = u - t;
      }
    }
  }
}

void FftPlan::forward(std::complex<double>* x) const {
  if (n_ == 1) return;
  if (pow2_) {
    forward_pow2(x);
    return;
  }
  // Bluestein: X_k = chirp_k * ((x*chirp) (*) conj-chirp)_k
  std::vector<std::complex<double>> a(conv_n_, {0.0, 0.0});
  for (std::size_t k = 0; k < n_; ++k) a[k] = x[k] * chirp_[k];
  conv_plan_->forward(a.data());
  for (std::size_t k = 0; k < conv_n_; ++k) a[k] *= chirp_fft_[k];
  conv_plan_->inverse(a.data());
  for (std::size_t k = 0; k < n_; ++k) x[k] = a[k] * chirp_[k];
}

void FftPlan::inverse(std::complex<double>* x) const {
  for (std::size_t i = 0; i < n_; ++i) x[i] = std::conj(x[i]);
  forward(x);
  const double inv = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = std::conj(x[i]) * inv;
}

std::shared_ptr<const FftPlan> fft_plan(std::size_t n) {
  static std::mutex mu;
  static std::unordered_map<std::size_t, std::shared_ptr<const FftPlan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto plan = std::make_shared<const FftPlan>(n);
  cache.emplace(n, plan);
  return plan;
}

std::vector<std::complex<double>> fft(std::vector<std::complex<double>> x) {
  fft_plan(x.size())->forward(x.data());
  return x;
}

std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> x) {
  fft_plan(x.size())->inverse(x.data());
  return x;
}

std::vector<double> real_fft_magnitudes(const double* x, std::size_t n) {
  std::vector<std::complex<double>> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = {x[i], 0.0};
  fft_plan(n)->forward(z.data());
  const std::size_t half = n / 2 + 1;
  std::vector<double> mag(half);
  kernels::magnitudes(z.data(), mag.data(), half);
  return mag;
}

}  // namespace mindrace
