#include "mindrace/svm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "mindrace/framed_file.hpp"
#include "mindrace/kernels.hpp"

namespace mindrace {

namespace {

constexpr double kTau = 1e-12;

double kernel_raw(const KernelSpec& k, const double* a, const double* b,
                  std::size_t n) {
  switch (k.kind) {
    case KernelKind::linear:
      return kernels::dot(a, b, n);
    case KernelKind::polynomial:
      return std::pow(k.gamma * kernels::dot(a, b, n) + k.coef0, k.degree);
    case KernelKind::rbf:
      return std::exp(-k.gamma * kernels::squared_distance(a, b, n));
  }
  return 0.0;
}

// run f(0..n) across a few threads; tasks must be independent
void parallel_for(int n, const std::function<void(int)>& f) {
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int workers = std::max(1, std::min(hw, n));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

double kernel_eval(const KernelSpec& k, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("kernel_eval: dimension mismatch");
  return kernel_raw(k, x.data(), y.data(), static_cast<std::size_t>(x.size()));
}

double BinarySvmModel::decision(const Eigen::VectorXd& x) const {
  if (x.size() != support_vectors.cols())
    throw std::invalid_argument("svm decision: dimension mismatch");
  double f = bias;
  const std::size_t n = static_cast<std::size_t>(x.size());
  for (Eigen::Index i = 0; i < support_vectors.rows(); ++i) {
    // rows of a row-major copy are contiguous; keep one row buffer
    f += dual_coefs(i) *
         kernel_raw(kernel, support_vectors.row(i).data(), x.data(), n);
  }
  return f;
}

BinarySvmModel train_binary_svm(const Eigen::MatrixXd& x,
                                const std::vector<int>& y, double c,
                                const KernelSpec& kernel, double tol,
                                long max_iter) {
  const Eigen::Index m = x.rows();
  if (m < 2 || static_cast<Eigen::Index>(y.size()) != m)
    throw std::invalid_argument("train_binary_svm: need >= 2 labeled rows");
  std::vector<double> ys(m);
  bool has_pos = false, has_neg = false;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (y[i] != 1 && y[i] != -1)
      throw std::invalid_argument("train_binary_svm: labels must be +/-1");
    ys[i] = y[i];
    (y[i] == 1 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg)
    throw std::invalid_argument("train_binary_svm: single-class input");

  // row-major copy so kernel rows are contiguous
  RowMatrixXd xr = x;
  const std::size_t dim = static_cast<std::size_t>(x.cols());

  // full kernel matrix (desk-scale problem sizes)
  Eigen::MatrixXd q(m, m);
  parallel_for(static_cast<int>(m), [&](int i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double kij = kernel_raw(kernel, xr.row(i).data(), xr.row(j).data(), dim);
      q(i, j) = ys[i] * ys[j] * kij;
      q(j, i) = q(i, j);
    }
  });

  std::vector<double> alpha(m, 0.0);
  std::vector<double> grad(m, -1.0);  // gradient of 1/2 a'Qa - e'a

  bool converged = false;
  long iter = 0;
  double m_up = 0.0, m_low = 0.0;
  for (; iter < max_iter; ++iter) {
    // working-set selection: maximal KKT violation
    int i_up = -1, i_low = -1;
    double best_up = -std::numeric_limits<double>::infinity();
    double best_low = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < m; ++t) {
      const double v = -ys[t] * grad[t];
      const bool in_up = (ys[t] > 0 && alpha[t] < c) || (ys[t] < 0 && alpha[t] > 0);
      const bool in_low = (ys[t] > 0 && alpha[t] > 0) || (ys[t] < 0 && alpha[t] < c);
      if (in_up && v > best_up) {
        best_up = v;
        i_up = static_cast<int>(t);
      }
      if (in_low && v < best_low) {
        best_low = v;
        i_low = static_cast<int>(t);
      }
    }
    m_up = best_up;
    m_low = best_low;
    if (i_up < 0 || i_low < 0 || best_up - best_low < tol) {
      converged = true;
      break;
    }
    const int i = i_up, j = i_low;
    const double ai_old = alpha[i], aj_old = alpha[j];

    if (ys[i] != ys[j]) {
      const double quad = std::max(q(i, i) + q(j, j) + 2.0 * q(i, j), kTau);
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else {
        if (alpha[i] < 0) {
          alpha[i] = 0;
          alpha[j] = -diff;
        }
      }
      if (diff > 0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = c + diff;
        }
      }
    } else {
      const double quad = std::max(q(i, i) + q(j, j) - 2.0 * q(i, j), kTau);
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = sum;
        }
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else {
        if (alpha[i] < 0) {
          alpha[i] = 0;
          alpha[j] = sum;
        }
      }
    }

    const double di = alpha[i] - ai_old;
    const double dj = alpha[j] - aj_old;
    if (di == 0.0 && dj == 0.0) {
      converged = true;  // boxed in: violation cannot be reduced further
      break;
    }
    for (Eigen::Index t = 0; t < m; ++t) grad[t] += q(t, i) * di + q(t, j) * dj;
  }

  const double bias = (m_up + m_low) / 2.0;

  BinarySvmModel model;
  model.kernel = kernel;
  model.converged = converged;
  model.bias = bias;
  std::vector<Eigen::Index> sv;
  for (Eigen::Index i = 0; i < m; ++i)
    if (alpha[i] > 0.0) sv.push_back(i);
  model.support_vectors.resize(sv.size(), x.cols());
  model.dual_coefs.resize(sv.size());
  for (std::size_t k = 0; k < sv.size(); ++k) {
    model.support_vectors.row(k) = x.row(sv[k]);
    model.dual_coefs(k) = alpha[sv[k]] * ys[sv[k]];
  }
  // dual objective: sum(alpha) - 1/2 a'Qa, via the final gradient
  double obj = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) obj += alpha[i] * (1.0 - 0.5 * (grad[i] + 1.0));
  model.objective = obj;
  return model;
}

std::pair<int, double> predict_binary(const BinarySvmModel& m,
                                      const Eigen::VectorXd& x) {
  const double f = m.decision(x);
  return {f >= 0.0 ? 1 : -1, f};
}

int MulticlassSvmModel::predict(const Eigen::VectorXd& x) const {
  std::map<int, int> votes;
  std::map<int, double> magnitude;
  for (int c : class_ids) {
    votes[c] = 0;
    magnitude[c] = 0.0;
  }
  for (const auto& p : pairs) {
    const double f = p.decision(x);
    const int winner = f >= 0.0 ? p.positive_class : p.negative_class;
    votes[winner] += 1;
    magnitude[winner] += std::abs(f);
  }
  int best = class_ids.front();
  for (int c : class_ids) {
    if (votes[c] > votes[best]) best = c;
    else if (votes[c] == votes[best] && c != best) {
      if (magnitude[c] > magnitude[best]) best = c;
      else if (magnitude[c] == magnitude[best] && c < best) best = c;
    }
  }
  return best;
}

MulticlassSvmModel train_multiclass(const Eigen::MatrixXd& x,
                                    const std::vector<int>& y, double c,
                                    const KernelSpec& kernel) {
  if (x.rows() != static_cast<Eigen::Index>(y.size()))
    throw std::invalid_argument("train_multiclass: label count mismatch");
  std::set<int> ids(y.begin(), y.end());
  if (ids.size() < 2)
    throw std::invalid_argument("train_multiclass: need >= 2 classes");

  MulticlassSvmModel model;
  model.class_ids.assign(ids.begin(), ids.end());
  for (std::size_t a = 0; a < model.class_ids.size(); ++a) {
    for (std::size_t b = a + 1; b < model.class_ids.size(); ++b) {
      const int ca = model.class_ids[a], cb = model.class_ids[b];
      std::vector<Eigen::Index> rows;
      for (Eigen::Index i = 0; i < x.rows(); ++i)
        if (y[i] == ca || y[i] == cb) rows.push_back(i);
      Eigen::MatrixXd xs(rows.size(), x.cols());
      std::vector<int> yy(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        xs.row(i) = x.row(rows[i]);
        yy[i] = (y[rows[i]] == ca) ? 1 : -1;
      }
      BinarySvmModel bm = train_binary_svm(xs, yy, c, kernel);
      bm.positive_class = ca;
      bm.negative_class = cb;
      model.pairs.push_back(std::move(bm));
    }
  }
  return model;
}

VotingSvmModel train_voting_svm(const std::vector<FeatureMatrix>& windows,
                                const VotingSvmParams& params) {
  if (windows.empty()) throw std::invalid_argument("train_voting_svm: no windows");
  const Eigen::Index n_ch = windows.front().values.rows();
  const Eigen::Index b = windows.front().values.cols();
  for (const auto& w : windows)
    if (w.values.rows() != n_ch || w.values.cols() != b)
      throw std::invalid_argument("train_voting_svm: inconsistent feature shapes");

  std::vector<int> labels(windows.size());
  for (std::size_t i = 0; i < windows.size(); ++i) labels[i] = windows[i].class_id;
  std::set<int> ids(labels.begin(), labels.end());

  VotingSvmModel model;
  model.bands = windows.front().bands;
  model.class_ids.assign(ids.begin(), ids.end());
  model.l2_normalize_units = params.l2_normalize_units;
  if (ids.size() == 2 && b % 2 == 0)
    model.warnings.push_back(
        "even unit count with two classes: majority-vote ties possible");

  model.units.resize(b);
  std::exception_ptr failure;
  std::mutex failure_mu;
  parallel_for(static_cast<int>(b), [&](int j) {
    try {
      Eigen::MatrixXd xu(windows.size(), n_ch);
      for (std::size_t i = 0; i < windows.size(); ++i) {
        Eigen::VectorXd col = windows[i].values.col(j);
        if (params.l2_normalize_units) col = l2_normalize(col);
        xu.row(i) = col.transpose();
      }
      KernelSpec kernel;
      kernel.kind = params.kernel;
      kernel.gamma = params.gamma;
      if (kernel.kind != KernelKind::linear && params.gamma <= 0.0) {
        // referenced-library default: 1 / (n_features * Var[all entries])
        const double mean = xu.mean();
        const double var = (xu.array() - mean).square().mean();
        kernel.gamma = var > 0 ? 1.0 / (static_cast<double>(n_ch) * var) : 1.0;
      }
      model.units[j] = train_multiclass(xu, labels, params.c, kernel);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);
  return model;
}

int predict_voting(const VotingSvmModel& model, const Eigen::MatrixXd& features) {
  const int b = model.unit_count();
  if (features.cols() != b)
    throw std::invalid_argument("predict_voting: feature column count mismatch");

  std::map<int, int> votes;
  std::map<int, double> magnitude;
  for (int c : model.class_ids) {
    votes[c] = 0;
    magnitude[c] = 0.0;
  }
  for (int j = 0; j < b; ++j) {
    Eigen::VectorXd col = features.col(j);
    if (model.l2_normalize_units) col = l2_normalize(col);
    // unit vote plus its summed pairwise decision magnitude for ties
    const auto& unit = model.units[j];
    std::map<int, int> uv;
    std::map<int, double> um;
    for (int c : unit.class_ids) {
      uv[c] = 0;
      um[c] = 0.0;
    }
    for (const auto& p : unit.pairs) {
      const double f = p.decision(col);
      const int winner = f >= 0.0 ? p.positive_class : p.negative_class;
      uv[winner] += 1;
      um[winner] += std::abs(f);
    }
    int best = unit.class_ids.front();
    for (int c : unit.class_ids) {
      if (uv[c] > uv[best]) best = c;
      else if (uv[c] == uv[best] && c != best) {
        if (um[c] > um[best]) best = c;
        else if (um[c] == um[best] && c < best) best = c;
      }
    }
    votes[best] += 1;
    magnitude[best] += um[best];
  }
  int best = model.class_ids.front();
  for (int c : model.class_ids) {
    if (votes[c] > votes[best]) best = c;
    else if (votes[c] == votes[best] && c != best) {
      if (magnitude[c] > magnitude[best]) best = c;
      else if (magnitude[c] == magnitude[best] && c < best) best = c;
    }
  }
  return best;
}

void save_voting_model(const VotingSvmModel& m, const std::string& path) {
  nlohmann::json h;
  h["class_ids"] = m.class_ids;
  h["l2_normalize_units"] = m.l2_normalize_units;
  nlohmann::json bands = nlohmann::json::array();
  for (const auto& bnd : m.bands) bands.push_back({bnd.first, bnd.second});
  h["bands"] = bands;

  std::vector<std::byte> payload;
  nlohmann::json units = nlohmann::json::array();
  for (const auto& u : m.units) {
    nlohmann::json uj;
    uj["class_ids"] = u.class_ids;
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : u.pairs) {
      nlohmann::json pj;
      pj["positive_class"] = p.positive_class;
      pj["negative_class"] = p.negative_class;
      pj["bias"] = p.bias;
      pj["m"] = p.support_vectors.rows();
      pj["n"] = p.support_vectors.cols();
      pj["kernel"] = {{"kind", static_cast<int>(p.kernel.kind)},
                      {"gamma", p.kernel.gamma},
                      {"degree", p.kernel.degree},
                      {"coef0", p.kernel.coef0}};
      pairs.push_back(pj);
      for (Eigen::Index i = 0; i < p.support_vectors.rows(); ++i)
        for (Eigen::Index j = 0; j < p.support_vectors.cols(); ++j)
          append_f32(payload, static_cast<float>(p.support_vectors(i, j)));
      for (Eigen::Index i = 0; i < p.dual_coefs.size(); ++i)
        append_f32(payload, static_cast<float>(p.dual_coefs(i)));
    }
    uj["pairs"] = pairs;
    units.push_back(uj);
  }
  h["units"] = units;
  write_framed(path, "MRS1", h, payload.data(), payload.size());
}

VotingSvmModel load_voting_model(const std::string& path) {
  FramedFile f = read_framed(path, "MRS1", "svm-model");
  VotingSvmModel m;
  m.class_ids = f.header.at("class_ids").get<std::vector<int>>();
  m.l2_normalize_units = f.header.value("l2_normalize_units", true);
  for (const auto& b : f.header.at("bands"))
    m.bands.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());

  const float* p = reinterpret_cast<const float*>(f.payload.data());
  const float* end = p + f.payload.size() / 4;
  for (const auto& uj : f.header.at("units")) {
    MulticlassSvmModel unit;
    unit.class_ids = uj.at("class_ids").get<std::vector<int>>();
    for (const auto& pj : uj.at("pairs")) {
      BinarySvmModel bm;
      bm.positive_class = pj.at("positive_class").get<int>();
      bm.negative_class = pj.at("negative_class").get<int>();
      bm.bias = pj.at("bias").get<double>();
      const auto rows = pj.at("m").get<Eigen::Index>();
      const auto cols = pj.at("n").get<Eigen::Index>();
      const auto& kj = pj.at("kernel");
      bm.kernel.kind = static_cast<KernelKind>(kj.at("kind").get<int>());
      bm.kernel.gamma = kj.at("gamma").get<double>();
      bm.kernel.degree = kj.at("degree").get<int>();
      bm.kernel.coef0 = kj.at("coef0").get<double>();
      if (p + rows * cols + rows > end)
        throw std::runtime_error("corrupt svm-model: payload too short: " + path);
      bm.support_vectors.resize(rows, cols);
      for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
          bm.support_vectors(i, j) = static_cast<double>(*p++);
      bm.dual_coefs.resize(rows);
      for (Eigen::Index i = 0; i < rows; ++i)
        bm.dual_coefs(i) = static_cast<double>(*p++);
      unit.pairs.push_back(std::move(bm));
    }
    m.units.push_back(std::move(unit));
  }
  return m;
}

}  // namespace mindrace
