#include <doctest.h>

#include <cmath>
#include <random>

#include "mindrace/signal_metrics.hpp"

using namespace mindrace;

TEST_SUITE("signal_metrics") {

TEST_CASE("zscores hand values") {
  const auto z = zscores({1.0, 2.0, 3.0});
  CHECK(z[0] == doctest::Approx(-1.2247448714));
  CHECK(z[1] == doctest::Approx(0.0));
  CHECK(z[2] == doctest::Approx(1.2247448714));

  const auto zc = zscores({5.0, 5.0, 5.0, 5.0});
  for (double v : zc) CHECK(v == 0.0);

  // population std fixes the scale: max z of [0,0,0,10] is sqrt(3)
  const auto zo = zscores({0.0, 0.0, 0.0, 10.0});
  CHECK(zo[3] == doctest::Approx(std::sqrt(3.0)));

  CHECK_THROWS_AS(zscores({1.0}), std::invalid_argument);
}

TEST_CASE("hurst of white noise is near 0.5") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(4096);
  for (auto& v : x) v = g(rng);
  const auto h = hurst_exponent(x);
  CHECK_FALSE(h.degenerate);
  CHECK(h.h > 0.4);
  CHECK(h.h < 0.6);
}

TEST_CASE("hurst of a random walk is near 1.0") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(4096);
  double acc = 0.0;
  for (auto& v : x) {
    acc += g(rng);
    v = acc;
  }
  const auto h = hurst_exponent(x);
  CHECK(h.h > 0.85);
  CHECK(h.h < 1.15);
}

TEST_CASE("hurst of a constant series is degenerate 0.5") {
  std::vector<double> x(256, 1.0);
  const auto h = hurst_exponent(x);
  CHECK(h.degenerate);
  CHECK(h.h == doctest::Approx(0.5));
  CHECK_THROWS_AS(hurst_exponent(std::vector<double>(32, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("kurtosis, correlation, medians") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(20000);
  for (auto& v : x) v = g(rng);
  CHECK(excess_kurtosis(x.data(), x.size()) == doctest::Approx(0.0).epsilon(0.15));

  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 2.0 * x[i] + 1.0;
  CHECK(pearson_correlation(x.data(), y.data(), x.size()) == doctest::Approx(1.0));
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = -x[i];
  CHECK(pearson_correlation(x.data(), y.data(), x.size()) == doctest::Approx(-1.0));

  CHECK(median({3.0, 1.0, 2.0}) == doctest::Approx(2.0));
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == doctest::Approx(2.5));
  const double ramp[] = {0.0, 1.0, 3.0, 6.0};  // diffs 1,2,3
  CHECK(median_abs_gradient(ramp, 4) == doctest::Approx(2.0));
}

TEST_CASE("least squares line") {
  const auto [slope, intercept] =
      least_squares_line({1.0, 2.0, 3.0, 4.0}, {3.0, 5.0, 7.0, 9.0});
  CHECK(slope == doctest::Approx(2.0));
  CHECK(intercept == doctest::Approx(1.0));
}

}  // TEST_SUITE
