#include "mindrace/faster.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mindrace/fastica.hpp"
#include "mindrace/fft.hpp"
#include "mindrace/framed_file.hpp"
#include "mindrace/signal_metrics.hpp"
#include "mindrace/spline.hpp"

namespace mindrace {

namespace {

constexpr double kZLimit = 3.0;

Eigen::MatrixXd concat_epochs(const EpochSet& set) {
  if (set.epochs.empty()) return {};
  const Eigen::Index c = set.epochs.front().data.rows();
  Eigen::Index total = 0;
  for (const auto& e : set.epochs) total += e.data.cols();
  Eigen::MatrixXd out(c, total);
  Eigen::Index at = 0;
  for (const auto& e : set.epochs) {
    out.middleCols(at, e.data.cols()) = e.data;
    at += e.data.cols();
  }
  return out;
}

// rows of `values` are items, columns metrics; fills z and the reject list
void apply_z_rule(MetricTable& t) {
  const Eigen::Index items = t.values.rows();
  const Eigen::Index metrics = t.values.cols();
  t.zvalues.resize(items, metrics);
  for (Eigen::Index m = 0; m < metrics; ++m) {
    std::vector<double> col(items);
    for (Eigen::Index i = 0; i < items; ++i) col[i] = t.values(i, m);
    const auto z = zscores(col);
    for (Eigen::Index i = 0; i < items; ++i) t.zvalues(i, m) = z[i];
  }
  for (Eigen::Index i = 0; i < items; ++i)
    for (Eigen::Index m = 0; m < metrics; ++m)
      if (std::abs(t.zvalues(i, m)) > kZLimit) {
        t.rejected.push_back(static_cast<int>(i));
        break;
      }
}

// average one-sided power spectrum over non-overlapping fs-length segments;
// slope of log power vs frequency across [25, min(45, fs/2-1)] Hz
double power_gradient(const double* x, std::size_t n, double fs) {
  const std::size_t seg = static_cast<std::size_t>(std::llround(fs));
  if (seg < 8 || n < 8) return 0.0;
  const std::size_t use = std::min(seg, n);
  const std::size_t nseg = std::max<std::size_t>(1, n / use);
  const std::size_t half = use / 2 + 1;
  std::vector<double> power(half, 0.0);
  for (std::size_t s = 0; s < nseg; ++s) {
    const auto mag = real_fft_magnitudes(x + s * use, use);
    for (std::size_t k = 0; k < half; ++k) power[k] += mag[k] * mag[k];
  }
  const double df = fs / static_cast<double>(use);
  const double f_hi = std::min(45.0, fs / 2.0 - 1.0);
  std::vector<double> fx, fy;
  for (std::size_t k = 0; k < half; ++k) {
    const double f = df * static_cast<double>(k);
    if (f >= 25.0 && f <= f_hi) {
      fx.push_back(f);
      fy.push_back(std::log(power[k] / static_cast<double>(nseg) + 1e-30));
    }
  }
  if (fx.size() < 2) return 0.0;
  return least_squares_line(fx, fy).first;
}

std::vector<std::size_t> indices_from_names(const Montage& m,
                                            const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  for (const auto& n : names)
    if (auto i = m.index_of(n)) idx.push_back(*i);
  return idx;
}

}  // namespace

std::vector<std::size_t> FasterModel::bad_indices() const {
  return indices_from_names(montage, bad_channels);
}

MetricTable detect_bad_channels(const EpochSet& set) {
  if (set.epochs.size() < 2)
    throw std::invalid_argument("detect_bad_channels: need >= 2 epochs");
  const Eigen::MatrixXd x = concat_epochs(set);
  const Eigen::Index c = x.rows();
  if (c < 4) throw std::invalid_argument("detect_bad_channels: need >= 4 channels");
  const std::size_t n = static_cast<std::size_t>(x.cols());

  MetricTable t;
  t.metric_names = {"variance", "neg_mean_abs_correlation", "hurst"};
  t.values.resize(c, 3);
  // Eigen rows are not contiguous in column-major storage; copy per channel
  std::vector<Eigen::VectorXd> rows(c);
  for (Eigen::Index i = 0; i < c; ++i) rows[i] = x.row(i);
  for (Eigen::Index i = 0; i < c; ++i) {
    t.values(i, 0) = population_variance(rows[i].data(), n);
    double corr_sum = 0.0;
    for (Eigen::Index j = 0; j < c; ++j) {
      if (i == j) continue;
      corr_sum += std::abs(pearson_correlation(rows[i].data(), rows[j].data(), n));
    }
    t.values(i, 1) = -corr_sum / static_cast<double>(c - 1);  // low corr -> high
    t.values(i, 2) = hurst_exponent(rows[i].data(), n).h;
  }
  apply_z_rule(t);
  return t;
}

EpochRejection reject_bad_epochs(const EpochSet& set) {
  const std::size_t ne = set.epochs.size();
  if (ne < 3) throw std::invalid_argument("reject_bad_epochs: need >= 3 epochs");
  const Eigen::Index c = set.epochs.front().data.rows();

  Eigen::VectorXd grand_mean = Eigen::VectorXd::Zero(c);
  for (const auto& e : set.epochs) grand_mean += e.data.rowwise().mean();
  grand_mean /= static_cast<double>(ne);

  MetricTable t;
  t.metric_names = {"amplitude_range", "channel_deviation", "variance"};
  t.values.resize(ne, 3);
  for (std::size_t k = 0; k < ne; ++k) {
    const auto& d = set.epochs[k].data;
    const Eigen::VectorXd range =
        d.rowwise().maxCoeff() - d.rowwise().minCoeff();
    const Eigen::VectorXd dev =
        (d.rowwise().mean() - grand_mean).cwiseAbs();
    double var_mean = 0.0;
    for (Eigen::Index i = 0; i < c; ++i) {
      const Eigen::VectorXd row = d.row(i);
      var_mean += population_variance(row.data(), static_cast<std::size_t>(row.size()));
    }
    t.values(k, 0) = range.mean();
    t.values(k, 1) = dev.mean();
    t.values(k, 2) = var_mean / static_cast<double>(c);
  }
  apply_z_rule(t);

  EpochRejection out;
  out.table = t;
  out.rejected = t.rejected;
  out.kept.montage = set.montage;
  out.kept.fs = set.fs;
  for (std::size_t k = 0; k < ne; ++k)
    if (std::find(t.rejected.begin(), t.rejected.end(), static_cast<int>(k)) ==
        t.rejected.end())
      out.kept.epochs.push_back(set.epochs[k]);
  return out;
}

MetricTable detect_bad_components(const Eigen::MatrixXd& components,
                                  const Eigen::MatrixXd& eog, double fs,
                                  std::vector<std::string>* warnings) {
  const Eigen::Index k = components.rows();
  if (k < 3) throw std::invalid_argument("detect_bad_components: need >= 3 components");
  const std::size_t n = static_cast<std::size_t>(components.cols());
  const bool have_eog = eog.rows() > 0;
  if (!have_eog && warnings)
    warnings->push_back("no eye-proxy channels configured; EOG metric skipped");

  std::vector<Eigen::VectorXd> comp_rows(k);
  for (Eigen::Index i = 0; i < k; ++i) comp_rows[i] = components.row(i);
  std::vector<Eigen::VectorXd> eog_rows(eog.rows());
  for (Eigen::Index i = 0; i < eog.rows(); ++i) eog_rows[i] = eog.row(i);

  MetricTable t;
  t.metric_names = {"eog_correlation", "kurtosis", "power_gradient", "hurst",
                    "median_gradient"};
  const int base = have_eog ? 0 : 1;
  if (!have_eog)
    t.metric_names.erase(t.metric_names.begin());
  t.values.resize(k, 5 - base);
  for (Eigen::Index i = 0; i < k; ++i) {
    int col = 0;
    if (have_eog) {
      double best = 0.0;
      for (const auto& e : eog_rows)
        best = std::max(best,
                        std::abs(pearson_correlation(comp_rows[i].data(), e.data(), n)));
      t.values(i, col++) = best;
    }
    t.values(i, col++) = excess_kurtosis(comp_rows[i].data(), n);
    t.values(i, col++) = power_gradient(comp_rows[i].data(), n, fs);
    t.values(i, col++) = hurst_exponent(comp_rows[i].data(), n).h;
    t.values(i, col++) = median_abs_gradient(comp_rows[i].data(), n);
  }
  apply_z_rule(t);
  return t;
}

MetricTable epoch_channel_metrics(const Eigen::MatrixXd& d) {
  const Eigen::Index c = d.rows();
  MetricTable t;
  t.metric_names = {"variance", "median_gradient", "amplitude_range",
                    "channel_deviation"};
  t.values.resize(c, 4);
  const double epoch_mean = d.mean();
  for (Eigen::Index i = 0; i < c; ++i) {
    const Eigen::VectorXd row = d.row(i);
    const std::size_t n = static_cast<std::size_t>(row.size());
    t.values(i, 0) = population_variance(row.data(), n);
    t.values(i, 1) = median_abs_gradient(row.data(), n);
    t.values(i, 2) = row.maxCoeff() - row.minCoeff();
    t.values(i, 3) = std::abs(row.mean() - epoch_mean);
  }
  apply_z_rule(t);
  return t;
}

FasterResult faster_offline(const EpochSet& input, std::uint64_t seed) {
  if (input.epochs.size() < 8)
    throw std::invalid_argument("faster_offline: need >= 8 epochs");
  const Eigen::Index c = input.epochs.front().data.rows();

  FasterResult out;
  out.report.channels = detect_bad_channels(input);
  std::vector<std::size_t> bad;
  for (int i : out.report.channels.rejected)
    bad.push_back(static_cast<std::size_t>(i));

  // repair global bads in every epoch before anything downstream
  EpochSet repaired = input;
  for (auto& e : repaired.epochs) interpolate_channels(e.data, bad, input.montage);

  auto rejection = reject_bad_epochs(repaired);
  out.report.epochs = rejection.table;
  EpochSet kept = std::move(rejection.kept);

  std::vector<std::size_t> good;
  for (Eigen::Index i = 0; i < c; ++i)
    if (std::find(bad.begin(), bad.end(), static_cast<std::size_t>(i)) == bad.end())
      good.push_back(static_cast<std::size_t>(i));

  Eigen::MatrixXd concat = concat_epochs(kept);
  Eigen::MatrixXd concat_good(good.size(), concat.cols());
  for (std::size_t i = 0; i < good.size(); ++i)
    concat_good.row(i) = concat.row(good[i]);

  const IcaModel ica = fit_ica(concat_good, seed);
  if (!ica.converged)
    out.report.warnings.push_back("ICA did not converge within 200 iterations");

  Eigen::MatrixXd sources = ica.decompose(concat_good);
  Eigen::MatrixXd eog(input.montage.eye_proxy_indices().size(), concat.cols());
  {
    const auto eyes = input.montage.eye_proxy_indices();
    for (std::size_t i = 0; i < eyes.size(); ++i) eog.row(i) = concat.row(eyes[i]);
  }
  out.report.components =
      detect_bad_components(sources, eog, input.fs, &out.report.warnings);

  for (int r : out.report.components.rejected) sources.row(r).setZero();
  const Eigen::MatrixXd recon = ica.reconstruct(sources);

  // model with whitening/mixing embedded over the full channel set
  FasterModel model;
  model.montage = input.montage;
  for (auto b : bad) model.bad_channels.push_back(input.montage.channel_names[b]);
  const int kk = ica.rank;
  model.whitening = Eigen::MatrixXd::Zero(kk, c);
  model.mixing = Eigen::MatrixXd::Zero(c, kk);
  model.channel_means = Eigen::VectorXd::Zero(c);
  for (std::size_t i = 0; i < good.size(); ++i) {
    model.whitening.col(good[i]) = ica.whitening.col(i);
    model.mixing.row(good[i]) = ica.mixing.row(i);
    model.channel_means(good[i]) = ica.means(i);
  }
  model.unmixing = ica.unmixing;
  model.rejected_components = out.report.components.rejected;
  model.ica_converged = ica.converged;

  // write reconstructed good channels back, then per-epoch channel repair
  out.cleaned.montage = input.montage;
  out.cleaned.fs = input.fs;
  Eigen::Index at = 0;
  for (const auto& e : kept.epochs) {
    Epoch ce = e;
    for (std::size_t i = 0; i < good.size(); ++i)
      ce.data.row(good[i]) = recon.row(i).segment(at, e.data.cols());
    at += e.data.cols();

    MetricTable step4 = epoch_channel_metrics(ce.data);
    std::vector<std::size_t> flagged;
    for (int i : step4.rejected) flagged.push_back(static_cast<std::size_t>(i));
    if (!flagged.empty() && flagged.size() * 2 < static_cast<std::size_t>(c))
      interpolate_channels(ce.data, flagged, input.montage);
    out.report.epoch_channels.push_back(std::move(step4));
    out.cleaned.epochs.push_back(std::move(ce));
  }
  out.model = std::move(model);
  return out;
}

Eigen::MatrixXd faster_online_apply(const FasterModel& model,
                                    const Eigen::MatrixXd& window) {
  const Eigen::Index c = model.whitening.cols();
  if (window.rows() != c)
    throw std::invalid_argument("faster_online_apply: channel count mismatch");

  Eigen::MatrixXd w = window;
  const auto bad = model.bad_indices();
  interpolate_channels(w, bad, model.montage);

  Eigen::MatrixXd sources =
      model.unmixing * (model.whitening * (w.colwise() - model.channel_means));
  for (int r : model.rejected_components) sources.row(r).setZero();
  const Eigen::MatrixXd recon =
      (model.mixing * sources).colwise() + model.channel_means;

  std::vector<bool> is_bad(c, false);
  for (auto b : bad) is_bad[b] = true;
  for (Eigen::Index i = 0; i < c; ++i)
    if (!is_bad[i]) w.row(i) = recon.row(i);

  MetricTable step4 = epoch_channel_metrics(w);
  std::vector<std::size_t> flagged;
  for (int i : step4.rejected) flagged.push_back(static_cast<std::size_t>(i));
  if (!flagged.empty() && flagged.size() * 2 < static_cast<std::size_t>(c))
    interpolate_channels(w, flagged, model.montage);
  return w;
}

void save_faster_model(const FasterModel& m, const std::string& path) {
  nlohmann::json h;
  h["bad_channels"] = m.bad_channels;
  h["rejected_components"] = m.rejected_components;
  h["k"] = m.unmixing.rows();
  h["channels"] = m.whitening.cols();
  h["ica_converged"] = m.ica_converged;
  nlohmann::json mj;
  mj["channel_names"] = m.montage.channel_names;
  nlohmann::json pos = nlohmann::json::array();
  for (const auto& p : m.montage.positions) pos.push_back({p.x(), p.y(), p.z()});
  mj["positions"] = pos;
  mj["eye_proxy_channels"] = m.montage.eye_proxy_channels;
  h["montage"] = mj;

  std::vector<std::byte> payload;
  auto put_matrix = [&payload](const Eigen::MatrixXd& mat) {
    for (Eigen::Index r = 0; r < mat.rows(); ++r)
      for (Eigen::Index cc = 0; cc < mat.cols(); ++cc) append_f64(payload, mat(r, cc));
  };
  put_matrix(m.whitening);
  put_matrix(m.unmixing);
  put_matrix(m.mixing);
  for (Eigen::Index i = 0; i < m.channel_means.size(); ++i)
    append_f64(payload, m.channel_means(i));
  write_framed(path, "MRF1", h, payload.data(), payload.size());
}

FasterModel load_faster_model(const std::string& path) {
  FramedFile f = read_framed(path, "MRF1", "faster-model");
  FasterModel m;
  m.bad_channels = f.header.at("bad_channels").get<std::vector<std::string>>();
  m.rejected_components = f.header.at("rejected_components").get<std::vector<int>>();
  m.ica_converged = f.header.value("ica_converged", true);
  const Eigen::Index k = f.header.at("k").get<Eigen::Index>();
  const Eigen::Index c = f.header.at("channels").get<Eigen::Index>();
  const auto& mj = f.header.at("montage");
  m.montage.channel_names = mj.at("channel_names").get<std::vector<std::string>>();
  for (const auto& p : mj.at("positions"))
    m.montage.positions.emplace_back(p.at(0).get<double>(), p.at(1).get<double>(),
                                     p.at(2).get<double>());
  m.montage.eye_proxy_channels =
      mj.at("eye_proxy_channels").get<std::vector<std::string>>();

  const std::size_t need = static_cast<std::size_t>(k * c + k * k + c * k + c) * 8;
  if (f.payload.size() != need)
    throw std::runtime_error("corrupt faster-model: payload size mismatch: " + path);
  const double* p = reinterpret_cast<const double*>(f.payload.data());
  auto get_matrix = [&p](Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXd mat(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index cc = 0; cc < cols; ++cc) mat(r, cc) = *p++;
    return mat;
  };
  m.whitening = get_matrix(k, c);
  m.unmixing = get_matrix(k, k);
  m.mixing = get_matrix(c, k);
  m.channel_means.resize(c);
  for (Eigen::Index i = 0; i < c; ++i) m.channel_means(i) = *p++;
  return m;
}

}  // namespace mindrace
