#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace mindrace {

struct IcaModel {
  Eigen::MatrixXd whitening;  // k x c, PCA whitening of centered data
  Eigen::MatrixXd unmixing;   // k x k, orthogonal in whitened space
  Eigen::MatrixXd mixing;     // c x k, pseudo-inverse of unmixing*whitening
  Eigen::VectorXd means;      // per-channel means removed before whitening
  int rank = 0;
  bool converged = true;

  // sources = unmixing * whitening * (X - means)
  Eigen::MatrixXd decompose(const Eigen::MatrixXd& x) const;
  // X_hat = mixing * sources + means
  Eigen::MatrixXd reconstruct(const Eigen::MatrixXd& sources) const;
};

// FastICA with the log-cosh (tanh) contrast and symmetric decorrelation.
// Whitening keeps eigenvalues above 1e-12 of the largest, so rank-deficient
// inputs yield fewer components than channels. Deterministic for a fixed
// seed; tolerance 1e-4 on the fixed point, at most 200 iterations (best
// iterate with converged=false after that).
IcaModel fit_ica(const Eigen::MatrixXd& data, std::uint64_t seed,
                 double tol = 1e-4, int max_iter = 200);

}  // namespace mindrace
