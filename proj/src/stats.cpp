#include "mindrace/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mindrace {

double normal_cdf(double z) {
  static const boost::math::normal_distribution<double> dist(0.0, 1.0);
  return boost::math::cdf(dist, z);
}

double chi_squared_sf(double x, int dof) {
  if (x <= 0.0) return 1.0;
  const boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, x));
}

double student_t_sf(double t, int dof) {
  const boost::math::students_t_distribution<double> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, t));
}

std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                    const std::vector<double>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("wilcoxon: length mismatch");
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    if (diff != 0.0) d.push_back(diff);
  }
  if (d.empty())
    throw std::invalid_argument("wilcoxon: all differences are zero");
  const int n = static_cast<int>(d.size());
  if (n < 5)
    throw std::invalid_argument("wilcoxon: need >= 5 nonzero differences");

  std::vector<double> ad(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) ad[i] = std::abs(d[i]);
  const auto ranks = average_ranks(ad);
  double w_plus = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > 0.0) w_plus += ranks[i];

  WilcoxonResult res;
  res.n = n;
  res.w_plus = w_plus;

  if (n <= 12) {
    // exact: enumerate all 2^n sign assignments of the ranks
    const std::size_t total = std::size_t{1} << n;
    std::size_t count_ge = 0, count_le = 0;
    const double eps = 1e-9;
    for (std::size_t mask = 0; mask < total; ++mask) {
      double w = 0.0;
      for (int i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) w += ranks[i];
      if (w >= w_plus - eps) ++count_ge;
      if (w <= w_plus + eps) ++count_le;
    }
    const double p_ge = static_cast<double>(count_ge) / static_cast<double>(total);
    const double p_le = static_cast<double>(count_le) / static_cast<double>(total);
    res.p = std::min(1.0, 2.0 * std::min(p_ge, p_le));
    res.exact = true;
    return res;
  }

  // normal approximation with tie and continuity corrections
  const double dn = n;
  const double mu = dn * (dn + 1.0) / 4.0;
  std::map<double, int> tie_groups;
  for (double r : ranks) tie_groups[r] += 1;
  double tie_sum = 0.0;
  for (const auto& [rank, cnt] : tie_groups) {
    (void)rank;
    tie_sum += static_cast<double>(cnt) * cnt * cnt - cnt;
  }
  const double sigma2 = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - tie_sum / 48.0;
  if (sigma2 <= 0.0) {
    res.p = 1.0;
    return res;
  }
  const double shift = w_plus - mu;
  const double cc = shift > 0 ? 0.5 : (shift < 0 ? -0.5 : 0.0);
  const double z = (shift - cc) / std::sqrt(sigma2);
  res.p = std::min(1.0, 2.0 * (1.0 - normal_cdf(std::abs(z))));
  return res;
}

FriedmanResult friedman_test(const Eigen::MatrixXd& results) {
  const Eigen::Index n = results.rows();
  const Eigen::Index k = results.cols();
  if (k < 3) throw std::invalid_argument("friedman: need >= 3 treatments");
  if (n < 5) throw std::invalid_argument("friedman: need >= 5 experiments");

  FriedmanResult res;
  res.mean_ranks.assign(k, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<double> row(k);
    for (Eigen::Index j = 0; j < k; ++j) row[j] = results(i, j);
    const auto ranks = average_ranks(row);
    for (Eigen::Index j = 0; j < k; ++j) res.mean_ranks[j] += ranks[j];
  }
  for (auto& r : res.mean_ranks) r /= static_cast<double>(n);

  const double kk = static_cast<double>(k);
  double ss = 0.0;
  for (double r : res.mean_ranks) {
    const double dlt = r - (kk + 1.0) / 2.0;
    ss += dlt * dlt;
  }
  res.chi2 = 12.0 * static_cast<double>(n) / (kk * (kk + 1.0)) * ss;
  res.p = chi_squared_sf(res.chi2, static_cast<int>(k - 1));
  return res;
}

std::vector<double> bonferroni(const std::vector<double>& p_values) {
  const double m = static_cast<double>(p_values.size());
  std::vector<double> out;
  out.reserve(p_values.size());
  for (double p : p_values) {
    if (p < 0.0 || p > 1.0)
      throw std::invalid_argument("bonferroni: p outside [0,1]");
    out.push_back(std::min(1.0, p * m));
  }
  return out;
}

LearningCurve learning_curve(const std::vector<double>& finish_times) {
  const int n = static_cast<int>(finish_times.size());
  if (n < 3) throw std::invalid_argument("learning_curve: need >= 3 runs");
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = static_cast<double>(i + 1);

  double sx = 0, sy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += finish_times[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (finish_times[i] - my);
  }
  LearningCurve lc;
  lc.slope = sxy / sxx;
  lc.intercept = my - lc.slope * mx;

  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    const double e = finish_times[i] - (lc.intercept + lc.slope * x[i]);
    ssr += e * e;
  }
  const double sigma2 = ssr / (n - 2);
  if (sigma2 <= 0.0) {
    lc.p = lc.slope == 0.0 ? 1.0 : 0.0;  // noiseless fit
    return lc;
  }
  const double se = std::sqrt(sigma2 / sxx);
  const double t = std::abs(lc.slope) / se;
  lc.p = std::min(1.0, 2.0 * student_t_sf(t, n - 2));
  return lc;
}

}  // namespace mindrace
