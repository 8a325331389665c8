#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

namespace mindrace {

// (x - mean) / population-std; all zeros when the input is constant.
// Throws std::invalid_argument for fewer than 2 values.
std::vector<double> zscores(const std::vector<double>& values);

struct HurstResult {
  double h = 0.5;
  bool degenerate = false;  // constant series
};

// Rescaled-range estimate over dyadic block sizes {8, 16, ..., len/2};
// slope of log(mean R/S) vs log(n), clamped to [0, 1.5].
// Throws std::invalid_argument for series shorter than 64 samples.
HurstResult hurst_exponent(const double* x, std::size_t n);
HurstResult hurst_exponent(const std::vector<double>& x);

double population_variance(const double* x, std::size_t n);
double excess_kurtosis(const double* x, std::size_t n);
double pearson_correlation(const double* a, const double* b, std::size_t n);
double median(std::vector<double> v);
// median of |x[i+1] - x[i]|
double median_abs_gradient(const double* x, std::size_t n);

// Ordinary least squares y = a*x + b -> (slope, intercept).
std::pair<double, double> least_squares_line(const std::vector<double>& x,
                                             const std::vector<double>& y);

}  // namespace mindrace
