#include "mindrace/features.hpp"

#include <cmath>
#include <stdexcept>

#include "mindrace/fft.hpp"
#include "mindrace/framed_file.hpp"
#include "mindrace/kernels.hpp"

namespace mindrace {

std::vector<Window> slide_windows(const Epoch& epoch, double win_s, double shift_s) {
  const std::int64_t l = epoch.data.cols();
  const std::int64_t w = std::llround(win_s * epoch.fs);
  const std::int64_t shift = std::max<std::int64_t>(1, std::llround(shift_s * epoch.fs));
  if (l < w) throw std::invalid_argument("slide_windows: epoch shorter than window");
  std::vector<Window> out;
  for (std::int64_t off = 0; off + w <= l; off += shift) {
    Window win;
    win.data = epoch.data.middleCols(off, w);
    win.parent_epoch = epoch.epoch_index;
    win.offset = off;
    win.class_id = epoch.class_id;
    win.fs = epoch.fs;
    out.push_back(std::move(win));
  }
  return out;
}

Spectrum fft_abs(const Eigen::MatrixXd& window_data, double fs) {
  const Eigen::Index c = window_data.rows();
  const std::size_t w = static_cast<std::size_t>(window_data.cols());
  if (w < 2) throw std::invalid_argument("fft_abs: window too short");
  Spectrum s;
  s.fs = fs;
  s.df = fs / static_cast<double>(w);
  const std::size_t half = w / 2 + 1;
  s.magnitudes.resize(c, half);
  std::vector<double> row(w);
  for (Eigen::Index i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < w; ++j) row[j] = window_data(i, j);
    const auto mag = real_fft_magnitudes(row.data(), w);
    for (std::size_t k = 0; k < half; ++k) s.magnitudes(i, k) = mag[k];
  }
  return s;
}

Spectrum fft_abs(const Window& window) { return fft_abs(window.data, window.fs); }

namespace {

// half-open membership: f_low <= k*df < f_high
std::pair<std::size_t, std::size_t> bin_range(const Spectrum& s, double f_low,
                                              double f_high) {
  const std::size_t nbins = static_cast<std::size_t>(s.magnitudes.cols());
  std::size_t first = nbins, last = nbins;  // [first, last)
  for (std::size_t k = 0; k < nbins; ++k) {
    const double f = s.df * static_cast<double>(k);
    if (f >= f_low && f < f_high) {
      if (first == nbins) first = k;
      last = k + 1;
    }
  }
  return {first, last};
}

}  // namespace

Eigen::VectorXd feature_average(const Spectrum& s, double f_low, double f_high) {
  if (f_high > s.fs / 2.0 + 1e-9)
    throw std::invalid_argument("feature_average: band beyond Nyquist");
  const auto [first, last] = bin_range(s, f_low, f_high);
  if (first >= last)
    throw std::invalid_argument("feature_average: band holds no bins");
  const std::size_t n = last - first;
  Eigen::VectorXd out(s.magnitudes.rows());
  for (Eigen::Index i = 0; i < s.magnitudes.rows(); ++i)
    out(i) = s.magnitudes.row(i).segment(first, n).sum() / static_cast<double>(n);
  return out;
}

FeatureMatrix feature_range(const Spectrum& s, double f_low, double f_high) {
  const double span = f_high - f_low;
  const double b_exact = span / 2.0;
  const int b = static_cast<int>(std::llround(b_exact));
  if (span < 2.0 || std::abs(b_exact - b) > 1e-9)
    throw std::invalid_argument("feature_range: span must be an even number of Hz");
  FeatureMatrix fm;
  fm.values.resize(s.magnitudes.rows(), b);
  for (int j = 0; j < b; ++j) {
    const double lo = f_low + 2.0 * j;
    const double hi = lo + 2.0;
    fm.values.col(j) = feature_average(s, lo, hi);
    fm.bands.emplace_back(lo, hi);
  }
  return fm;
}

BandSpec BandSpec::named(const std::string& name) {
  if (name == "theta") return {BandKind::theta, 4.0, 7.0};
  if (name == "alpha") return {BandKind::alpha, 7.0, 14.0};
  if (name == "beta") return {BandKind::beta, 14.0, 30.0};
  if (name == "gamma") return {BandKind::gamma, 30.0, 40.0};
  if (name == "range30") return {BandKind::range30, 4.0, 30.0};
  if (name == "range40") return {BandKind::range40, 2.0, 40.0};
  throw std::invalid_argument("unknown band name: " + name);
}

BandSpec BandSpec::custom_band(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("band: f_low must be < f_high");
  return {BandKind::custom, lo, hi};
}

std::string BandSpec::name() const {
  switch (kind) {
    case BandKind::theta: return "theta";
    case BandKind::alpha: return "alpha";
    case BandKind::beta: return "beta";
    case BandKind::gamma: return "gamma";
    case BandKind::range30: return "range30";
    case BandKind::range40: return "range40";
    case BandKind::custom: break;
  }
  return "custom[" + std::to_string(f_low) + "," + std::to_string(f_high) + ")";
}

FeatureMatrix band_features(const Spectrum& s, const BandSpec& band) {
  if (band.is_range()) return feature_range(s, band.f_low, band.f_high);
  FeatureMatrix fm;
  fm.values.resize(s.magnitudes.rows(), 1);
  fm.values.col(0) = feature_average(s, band.f_low, band.f_high);
  fm.bands.emplace_back(band.f_low, band.f_high);
  return fm;
}

Eigen::VectorXd l2_normalize(const Eigen::VectorXd& v) {
  const double norm =
      std::sqrt(kernels::sumsq(v.data(), static_cast<std::size_t>(v.size())));
  if (norm == 0.0) throw std::invalid_argument("degenerate feature");
  Eigen::VectorXd out = v;
  kernels::scale(out.data(), static_cast<std::size_t>(out.size()), 1.0 / norm);
  return out;
}

void write_feature_file(const std::string& path,
                        const std::vector<FeatureMatrix>& windows,
                        const std::vector<std::string>& channel_names) {
  if (windows.empty()) throw std::invalid_argument("write_feature_file: no windows");
  nlohmann::json h;
  h["channel_names"] = channel_names;
  nlohmann::json bands = nlohmann::json::array();
  for (const auto& b : windows.front().bands) bands.push_back({b.first, b.second});
  h["bands"] = bands;
  h["windows"] = windows.size();
  std::vector<int> classes, parents;
  for (const auto& w : windows) {
    classes.push_back(w.class_id);
    parents.push_back(w.parent_epoch);
  }
  h["class_ids"] = classes;
  h["parent_epochs"] = parents;

  std::vector<std::byte> payload;
  for (const auto& w : windows) {
    if (w.bands != windows.front().bands)
      throw std::invalid_argument("write_feature_file: mixed band layouts");
    for (Eigen::Index i = 0; i < w.values.rows(); ++i)
      for (Eigen::Index j = 0; j < w.values.cols(); ++j)
        append_f32(payload, static_cast<float>(w.values(i, j)));
  }
  write_framed(path, "MRX1", h, payload.data(), payload.size());
}

FeatureFile read_feature_file(const std::string& path) {
  FramedFile f = read_framed(path, "MRX1", "feature");
  FeatureFile out;
  out.channel_names = f.header.at("channel_names").get<std::vector<std::string>>();
  std::vector<std::pair<double, double>> bands;
  for (const auto& b : f.header.at("bands"))
    bands.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
  const auto n = f.header.at("windows").get<std::size_t>();
  const auto classes = f.header.at("class_ids").get<std::vector<int>>();
  const auto parents = f.header.at("parent_epochs").get<std::vector<int>>();
  const std::size_t rows = out.channel_names.size();
  const std::size_t cols = bands.size();
  if (f.payload.size() != n * rows * cols * 4)
    throw std::runtime_error("corrupt feature file: payload size mismatch: " + path);
  const float* p = reinterpret_cast<const float*>(f.payload.data());
  for (std::size_t w = 0; w < n; ++w) {
    FeatureMatrix fm;
    fm.bands = bands;
    fm.class_id = classes.at(w);
    fm.parent_epoch = parents.at(w);
    fm.values.resize(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        fm.values(i, j) = static_cast<double>(*p++);
    out.windows.push_back(std::move(fm));
  }
  return out;
}

}  // namespace mindrace
