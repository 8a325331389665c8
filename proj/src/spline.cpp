#include "mindrace/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mindrace {

double spline_g(double x, int m, int terms) {
  // sum_{n=1..terms} (2n+1) / (n (n+1))^m * P_n(x), Bonnet recurrence
  double p_prev = 1.0;  // P_0
  double p = x;         // P_1
  double total = 3.0 / std::pow(1.0 * 2.0, m) * p;
  for (int n = 2; n <= terms; ++n) {
    const double p_next =
        ((2.0 * n - 1.0) * x * p - (n - 1.0) * p_prev) / static_cast<double>(n);
    p_prev = p;
    p = p_next;
    total += (2.0 * n + 1.0) / std::pow(static_cast<double>(n) * (n + 1.0), m) * p;
  }
  return total;
}

Eigen::MatrixXd spline_transfer_matrix(const Montage& montage,
                                       const std::vector<std::size_t>& good,
                                       const std::vector<std::size_t>& bad) {
  const int ng = static_cast<int>(good.size());
  const int nb = static_cast<int>(bad.size());
  if (ng < 3) throw std::invalid_argument("spline: too few good electrodes");

  auto pos = [&](std::size_t i) -> const Eigen::Vector3d& {
    return montage.positions.at(i);
  };

  // Gram matrix on good electrodes, ridge on the diagonal
  Eigen::MatrixXd a(ng + 1, ng + 1);
  for (int i = 0; i < ng; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double cosang =
          std::clamp(pos(good[i]).dot(pos(good[j])), -1.0, 1.0);
      if (i != j && cosang > 1.0 - 1e-12)
        throw std::invalid_argument("spline: coincident electrode positions");
      const double v = spline_g(cosang) + (i == j ? 1e-5 : 0.0);
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  a.row(ng).setOnes();
  a.col(ng).setOnes();
  a(ng, ng) = 0.0;

  // columns = solutions for unit data at each good electrode
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(ng + 1, ng);
  rhs.topRows(ng).setIdentity();
  const Eigen::MatrixXd coef = a.partialPivLu().solve(rhs);  // (ng+1) x ng

  Eigen::MatrixXd gb(nb, ng + 1);
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < ng; ++j) {
      const double cosang =
          std::clamp(pos(bad[i]).dot(pos(good[j])), -1.0, 1.0);
      gb(i, j) = spline_g(cosang);
    }
    gb(i, ng) = 1.0;  // constant term
  }
  return gb * coef;
}

void interpolate_channels(Eigen::MatrixXd& data,
                          const std::vector<std::size_t>& bad,
                          const Montage& montage) {
  if (bad.empty()) return;
  const std::size_t c = static_cast<std::size_t>(data.rows());
  if (montage.size() != c)
    throw std::invalid_argument("spline: montage/data channel mismatch");
  if (bad.size() * 2 >= c)
    throw std::invalid_argument("spline: too many bad channels to interpolate");

  std::vector<bool> is_bad(c, false);
  for (auto b : bad) {
    if (b >= c) throw std::invalid_argument("spline: bad channel out of range");
    is_bad[b] = true;
  }
  std::vector<std::size_t> good;
  for (std::size_t i = 0; i < c; ++i)
    if (!is_bad[i]) good.push_back(i);

  const Eigen::MatrixXd t = spline_transfer_matrix(montage, good, bad);
  Eigen::MatrixXd good_rows(good.size(), data.cols());
  for (std::size_t i = 0; i < good.size(); ++i)
    good_rows.row(i) = data.row(good[i]);
  const Eigen::MatrixXd interp = t * good_rows;
  for (std::size_t i = 0; i < bad.size(); ++i) data.row(bad[i]) = interp.row(i);
}

}  // namespace mindrace
