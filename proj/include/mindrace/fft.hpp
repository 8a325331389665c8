#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace mindrace {

// Complex DFT of arbitrary length: iterative radix-2 when the length is a
// power of two, Bluestein's chirp-z reduction to a power-of-two convolution
// otherwise. Plans precompute twiddles/chirps and are immutable after
// construction, so a shared plan is safe across threads.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::complex<double>* data) const;
  void inverse(std::complex<double>* data) const;

 private:
  void forward_pow2(std::complex<double>* data) const;

  std::size_t n_ = 0;
  bool pow2_ = false;
  // radix-2 path
  std::vector<std::size_t> bitrev_;
  std::vector<std::complex<double>> twiddles_;
  // Bluestein path
  std::size_t conv_n_ = 0;
  std::shared_ptr<const FftPlan> conv_plan_;
  std::vector<std::complex<double>> chirp_;      // exp(-i*pi*k^2/n)
  std::vector<std::complex<double>> chirp_fft_;  // FFT of the chirp filter
};

// Process-wide plan cache keyed by length.
std::shared_ptr<const FftPlan> fft_plan(std::size_t n);

std::vector<std::complex<double>> fft(std::vector<std::complex<double>> x);
std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> x);

// One-sided magnitude spectrum of a real signal: floor(n/2)+1 values.
std::vector<double> real_fft_magnitudes(const double* x, std::size_t n);

}  // namespace mindrace
