#include "mindrace/signal_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mindrace/kernels.hpp"

namespace mindrace {

std::vector<double> zscores(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) throw std::invalid_argument("zscores: need at least 2 values");
  const double mean = kernels::sum(values.data(), n) / static_cast<double>(n);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  std::vector<double> z(n, 0.0);
  if (var <= 0.0) return z;
  const double sd = std::sqrt(var);
  for (std::size_t i = 0; i < n; ++i) z[i] = (values[i] - mean) / sd;
  return z;
}

double population_variance(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  const double mean = kernels::sum(x, n) / static_cast<double>(n);
  const double ss = kernels::sumsq(x, n);
  return std::max(0.0, ss / static_cast<double>(n) - mean * mean);
}

HurstResult hurst_exponent(const double* x, std::size_t n) {
  if (n < 64) throw std::invalid_argument("hurst: need at least 64 samples");
  std::vector<double> log_n, log_rs;
  for (std::size_t block = 8; block <= n / 2; block *= 2) {
    const std::size_t nblocks = n / block;
    double rs_sum = 0.0;
    std::size_t rs_cnt = 0;
    for (std::size_t b = 0; b < nblocks; ++b) {
      const double* blk = x + b * block;
      const double mean = kernels::sum(blk, block) / static_cast<double>(block);
      double run = 0.0, lo = 0.0, hi = 0.0, var = 0.0;
      for (std::size_t i = 0; i < block; ++i) {
        const double d = blk[i] - mean;
        run += d;
        lo = std::min(lo, run);
        hi = std::max(hi, run);
        var += d * d;
      }
      const double s = std::sqrt(var / static_cast<double>(block));
      if (s > 0.0) {
        rs_sum += (hi - lo) / s;
        ++rs_cnt;
      }
    }
    if (rs_cnt > 0) {
      log_n.push_back(std::log(static_cast<double>(block)));
      log_rs.push_back(std::log(rs_sum / static_cast<double>(rs_cnt)));
    }
  }
  if (log_n.size() < 2) return {0.5, true};
  auto [slope, intercept] = least_squares_line(log_n, log_rs);
  (void)intercept;
  return {std::clamp(slope, 0.0, 1.5), false};
}

HurstResult hurst_exponent(const std::vector<double>& x) {
  return hurst_exponent(x.data(), x.size());
}

double excess_kurtosis(const double* x, std::size_t n) {
  if (n < 2) return 0.0;
  const double mean = kernels::sum(x, n) / static_cast<double>(n);
  double m2 = 0.0, m4 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  if (m2 <= 0.0) return 0.0;
  return m4 / (m2 * m2) - 3.0;
}

double pearson_correlation(const double* a, const double* b, std::size_t n) {
  if (n < 2) return 0.0;
  const double ma = kernels::sum(a, n) / static_cast<double>(n);
  const double mb = kernels::sum(b, n) / static_cast<double>(n);
  const double sab = kernels::dot(a, b, n) - static_cast<double>(n) * ma * mb;
  const double saa = kernels::sumsq(a, n) - static_cast<double>(n) * ma * ma;
  const double sbb = kernels::sumsq(b, n) - static_cast<double>(n) * mb * mb;
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    const double lo = *std::max_element(v.begin(), v.begin() + mid);
    m = 0.5 * (m + lo);
  }
  return m;
}

double median_abs_gradient(const double* x, std::size_t n) {
  if (n < 2) return 0.0;
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = std::abs(x[i + 1] - x[i]);
  return median(std::move(d));
}

std::pair<double, double> least_squares_line(const std::vector<double>& x,
                                             const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2)
    throw std::invalid_argument("least_squares_line: need matched n >= 2");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (denom == 0.0) return {0.0, sy / dn};
  const double slope = (dn * sxy - sx * sy) / denom;
  return {slope, (sy - slope * sx) / dn};
}

}  // namespace mindrace
