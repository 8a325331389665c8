#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mindrace/montage.hpp"

namespace mindrace {

// Spherical-spline scalp interpolation (Perrin-style): g(x) is a truncated
// Legendre series with m = 4 smoothing order and 50 terms; the fit on good
// electrodes carries a constant term, a zero-sum constraint on the spline
// weights, and a 1e-5 ridge on the Gram diagonal.
//
// Returns the bad-from-good transfer matrix T (|bad| x |good|): interpolated
// bad-channel samples are T * good-channel samples.
Eigen::MatrixXd spline_transfer_matrix(const Montage& montage,
                                       const std::vector<std::size_t>& good,
                                       const std::vector<std::size_t>& bad);

// Replaces the rows of `data` listed in `bad` with spherical-spline
// interpolations from the remaining rows; good rows are untouched.
// Throws std::invalid_argument when |bad| >= channels/2 or electrode
// positions coincide.
void interpolate_channels(Eigen::MatrixXd& data,
                          const std::vector<std::size_t>& bad,
                          const Montage& montage);

// g(cos angle) kernel value (exposed for tests).
double spline_g(double x, int m = 4, int terms = 50);

}  // namespace mindrace
