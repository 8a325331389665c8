#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mindrace {

struct WilcoxonResult {
  double w_plus = 0.0;  // sum of positive-difference ranks
  double p = 1.0;       // two-sided
  int n = 0;            // pairs after dropping zero differences
  bool exact = false;
};

// Two-sided Wilcoxon signed-rank test: exact null distribution by full sign
// enumeration for n <= 12, normal approximation with tie and continuity
// corrections above. Throws std::invalid_argument when fewer than 5 nonzero
// differences remain or when all differences are zero.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                    const std::vector<double>& b);

struct FriedmanResult {
  double chi2 = 0.0;
  double p = 1.0;
  std::vector<double> mean_ranks;
};

// Friedman rank test over an experiments x treatments table (ties get
// average ranks, no tie correction): chi2 = 12n/(k(k+1)) * sum (Rbar_j -
// (k+1)/2)^2 against chi-square with k-1 dof. Requires >= 3 treatments and
// >= 5 experiments.
FriedmanResult friedman_test(const Eigen::MatrixXd& results);

// p*m clamped to 1, m = number of values.
std::vector<double> bonferroni(const std::vector<double>& p_values);

struct LearningCurve {
  double slope = 0.0;      // seconds per run
  double intercept = 0.0;
  double p = 1.0;          // two-sided t-test on slope != 0
};

// OLS of finish time on 1-based run index. Requires n >= 3.
LearningCurve learning_curve(const std::vector<double>& finish_times);

// average ranks (1-based) with ties averaged
std::vector<double> average_ranks(const std::vector<double>& values);

// distribution helpers shared with tests
double normal_cdf(double z);
double chi_squared_sf(double x, int dof);   // upper tail
double student_t_sf(double t, int dof);     // upper tail

}  // namespace mindrace
