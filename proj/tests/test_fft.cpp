#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "mindrace/fft.hpp"

using namespace mindrace;

namespace {

// quadratic-time reference DFT
std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t t = 0; t < n; ++t) {
      const double a = -2.0 * std::numbers::pi * static_cast<double>(k * t) /
                       static_cast<double>(n);
      out[k] += x[t] * std::complex<double>{std::cos(a), std::sin(a)};
    }
  return out;
}

}  // namespace

TEST_SUITE("fft") {

TEST_CASE("matches the quadratic DFT for assorted lengths") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t n : {1, 2, 3, 5, 7, 8, 12, 16, 31, 60, 64, 100, 160, 500}) {
    std::vector<std::complex<double>> x(n);
    for (auto& v : x) v = {g(rng), g(rng)};
    const auto ours = fft(x);
    const auto ref = naive_dft(x);
    double scale = 1e-12;
    for (const auto& v : ref) scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < n; ++k)
      CHECK(std::abs(ours[k] - ref[k]) / scale < 1e-9);
  }
}

TEST_CASE("pure sine peak equals a*W/2") {
  const std::size_t w = 160;
  const double fs = 160.0;
  const double a = 2.5;
  std::vector<double> x(w);
  for (std::size_t i = 0; i < w; ++i)
    x[i] = a * std::sin(2.0 * std::numbers::pi * 10.0 * static_cast<double>(i) / fs);
  const auto mag = real_fft_magnitudes(x.data(), w);
  CHECK(mag[10] == doctest::Approx(a * w / 2.0).epsilon(1e-6));
  for (std::size_t k = 0; k < mag.size(); ++k)
    if (k != 10) CHECK(mag[k] < 1e-6 * a * w);
}

TEST_CASE("constant signal concentrates at DC") {
  const std::size_t w = 100;
  std::vector<double> x(w, 3.25);
  const auto mag = real_fft_magnitudes(x.data(), w);
  CHECK(mag[0] == doctest::Approx(3.25 * w).epsilon(1e-9));
  for (std::size_t k = 1; k < mag.size(); ++k) CHECK(mag[k] < 1e-7);
}

TEST_CASE("Parseval identity") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0.0, 2.0);
  for (std::size_t n : {64, 160, 250, 500}) {
    std::vector<std::complex<double>> x(n);
    double time_energy = 0.0;
    for (auto& v : x) {
      v = {g(rng), 0.0};
      time_energy += std::norm(v);
    }
    const auto spec = fft(x);
    double freq_energy = 0.0;
    for (const auto& v : spec) freq_energy += std::norm(v);
    CHECK(freq_energy ==
          doctest::Approx(static_cast<double>(n) * time_energy).epsilon(1e-6));
  }
}

TEST_CASE("forward-inverse round trip") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g(0.0, 1.0);
  for (std::size_t n : {1, 13, 128, 333}) {
    std::vector<std::complex<double>> x(n);
    for (auto& v : x) v = {g(rng), g(rng)};
    const auto back = ifft(fft(x));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(back[i] - x[i]) < 1e-10);
  }
}

}  // TEST_SUITE
