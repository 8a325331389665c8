#include "mindrace/fastica.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mindrace {

namespace {

// W <- (W W^T)^{-1/2} W
Eigen::MatrixXd symmetric_decorrelate(const Eigen::MatrixXd& w) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w * w.transpose());
  const Eigen::VectorXd d = es.eigenvalues().cwiseMax(1e-18).cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose() * w;
}

}  // namespace

Eigen::MatrixXd IcaModel::decompose(const Eigen::MatrixXd& x) const {
  return unmixing * (whitening * (x.colwise() - means));
}

Eigen::MatrixXd IcaModel::reconstruct(const Eigen::MatrixXd& sources) const {
  return (mixing * sources).colwise() + means;
}

IcaModel fit_ica(const Eigen::MatrixXd& data, std::uint64_t seed, double tol,
                 int max_iter) {
  const Eigen::Index c = data.rows();
  const Eigen::Index m = data.cols();
  if (c < 1 || m < 20 * c)
    throw std::invalid_argument("fit_ica: need at least 20*channels samples");

  IcaModel model;
  model.means = data.rowwise().mean();
  const Eigen::MatrixXd centered = data.colwise() - model.means;

  const Eigen::MatrixXd cov =
      centered * centered.transpose() / static_cast<double>(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  const Eigen::VectorXd evals = es.eigenvalues();
  const double cutoff = evals.maxCoeff() * 1e-12;
  int rank = 0;
  for (Eigen::Index i = 0; i < c; ++i)
    if (evals(i) > cutoff) ++rank;
  model.rank = rank;
  // eigenvalues ascend; keep the top `rank`
  Eigen::MatrixXd k(rank, c);
  for (int i = 0; i < rank; ++i) {
    const Eigen::Index src = c - 1 - i;
    k.row(i) = es.eigenvectors().col(src).transpose() / std::sqrt(evals(src));
  }
  model.whitening = k;

  const Eigen::MatrixXd xw = k * centered;  // rank x m, identity covariance

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd w(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) w(i, j) = gauss(rng);
  w = symmetric_decorrelate(w);

  model.converged = false;
  const double inv_m = 1.0 / static_cast<double>(m);
  for (int iter = 0; iter < max_iter; ++iter) {
    const Eigen::MatrixXd u = w * xw;             // rank x m projections
    const Eigen::MatrixXd g = u.array().tanh();   // contrast derivative
    const Eigen::VectorXd gprime_mean =
        (1.0 - g.array().square()).rowwise().mean();
    Eigen::MatrixXd w_new =
        g * xw.transpose() * inv_m - gprime_mean.asDiagonal() * w;
    w_new = symmetric_decorrelate(w_new);
    // fixed-point criterion: rows aligned with previous iterate up to sign
    const double delta =
        ((w_new * w.transpose()).diagonal().cwiseAbs().array() - 1.0)
            .abs()
            .maxCoeff();
    w = w_new;
    if (delta < tol) {
      model.converged = true;
      break;
    }
  }

  model.unmixing = w;
  const Eigen::MatrixXd full = w * k;  // rank x c
  // pseudo-inverse back to channel space
  model.mixing = full.completeOrthogonalDecomposition().pseudoInverse();
  return model;
}

}  // namespace mindrace
