#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mindrace/features.hpp"

namespace mindrace {

enum class KernelKind { linear, polynomial, rbf };

struct KernelSpec {
  KernelKind kind = KernelKind::rbf;
  double gamma = 1.0;
  int degree = 3;
  double coef0 = 0.0;

  static KernelSpec rbf(double gamma) { return {KernelKind::rbf, gamma, 3, 0.0}; }
  static KernelSpec linear() { return {KernelKind::linear, 0.0, 3, 0.0}; }
  static KernelSpec polynomial(double gamma, int degree, double coef0) {
    return {KernelKind::polynomial, gamma, degree, coef0};
  }
};

double kernel_eval(const KernelSpec& k, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y);

// row-major so each support vector is contiguous for the kernel inner loops
using RowMatrixXd =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct BinarySvmModel {
  RowMatrixXd support_vectors;  // m x n
  Eigen::VectorXd dual_coefs;       // alpha_i * y_i
  double bias = 0.0;
  KernelSpec kernel;
  int positive_class = 0;  // original ids behind the +1 / -1 labels
  int negative_class = 0;
  bool converged = true;
  double objective = 0.0;  // dual objective at the solution

  // decision value f(x) = sum_i coef_i K(sv_i, x) + bias
  double decision(const Eigen::VectorXd& x) const;
};

// Sequential minimal optimization on the dual with maximal-KKT-violation
// working-set selection; stops when the violation falls below `tol` (1e-3)
// or after max_iter pair updates (best iterate, converged=false).
BinarySvmModel train_binary_svm(const Eigen::MatrixXd& x,
                                const std::vector<int>& y, double c,
                                const KernelSpec& kernel, double tol = 1e-3,
                                long max_iter = 1000000);

// label +1/-1 and decision value; f == 0 resolves to +1
std::pair<int, double> predict_binary(const BinarySvmModel& m,
                                      const Eigen::VectorXd& x);

struct MulticlassSvmModel {
  std::vector<BinarySvmModel> pairs;  // one per unordered class pair
  std::vector<int> class_ids;

  int predict(const Eigen::VectorXd& x) const;
};

// One-vs-one reduction; `y` holds arbitrary class ids. Pairwise-vote ties
// break by summed |decision| over the tied classes' winning duels, then by
// lowest class id.
MulticlassSvmModel train_multiclass(const Eigen::MatrixXd& x,
                                    const std::vector<int>& y, double c,
                                    const KernelSpec& kernel);

struct VotingSvmParams {
  double c = 1.0;
  KernelKind kernel = KernelKind::rbf;
  double gamma = 0.0;  // <= 0: per-unit 1 / (n_features * mean feature variance)
  bool l2_normalize_units = true;
};

// One multiclass SVM per frequency bin; majority vote at prediction.
struct VotingSvmModel {
  std::vector<MulticlassSvmModel> units;
  std::vector<std::pair<double, double>> bands;
  std::vector<int> class_ids;
  bool l2_normalize_units = true;
  std::vector<std::string> warnings;

  int unit_count() const { return static_cast<int>(units.size()); }
};

// `windows` must share band layout and channel count; labels come from each
// FeatureMatrix's class_id.
VotingSvmModel train_voting_svm(const std::vector<FeatureMatrix>& windows,
                                const VotingSvmParams& params = {});

int predict_voting(const VotingSvmModel& model, const Eigen::MatrixXd& features);

void save_voting_model(const VotingSvmModel& m, const std::string& path);
VotingSvmModel load_voting_model(const std::string& path);

}  // namespace mindrace
