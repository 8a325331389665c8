#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mindrace/types.hpp"

namespace mindrace {

// One-sided magnitude spectrum per channel. For 1-second windows df is
// exactly 1 Hz.
struct Spectrum {
  Eigen::MatrixXd magnitudes;  // channels x (floor(W/2)+1)
  double df = 0.0;
  double fs = 0.0;
};

enum class BandKind { theta, alpha, beta, gamma, range30, range40, custom };

struct BandSpec {
  BandKind kind = BandKind::custom;
  double f_low = 0.0;
  double f_high = 0.0;

  bool is_range() const {
    return kind == BandKind::range30 || kind == BandKind::range40;
  }
  static BandSpec named(const std::string& name);  // "theta".."range40"
  static BandSpec custom_band(double lo, double hi);
  std::string name() const;
};

// channels x B feature block for one window plus its band layout.
struct FeatureMatrix {
  Eigen::MatrixXd values;                        // channels x B
  std::vector<std::pair<double, double>> bands;  // per-column [lo, hi)
  int parent_epoch = 0;
  int class_id = -1;
};

// Windows at offsets 0, round(shift_s*fs), ... while offset + W <= L.
std::vector<Window> slide_windows(const Epoch& epoch, double win_s = 1.0,
                                  double shift_s = 0.1);

// Magnitude of the one-sided DFT, rectangular window, no detrending.
Spectrum fft_abs(const Eigen::MatrixXd& window_data, double fs);
Spectrum fft_abs(const Window& window);

// Per channel, mean magnitude over bins with f_low <= k*df < f_high.
// Throws std::invalid_argument when the band holds no bins.
Eigen::VectorXd feature_average(const Spectrum& s, double f_low, double f_high);

// (f_high - f_low)/2 columns of feature_average over consecutive
// non-overlapping 2 Hz bins. The span must be even and >= 2.
FeatureMatrix feature_range(const Spectrum& s, double f_low, double f_high);

// Features for one window under a band spec: one column for a canonical
// band, the 2 Hz grid for range30/range40.
FeatureMatrix band_features(const Spectrum& s, const BandSpec& band);

// v / ||v||2. Throws std::invalid_argument("degenerate feature") on zeros.
Eigen::VectorXd l2_normalize(const Eigen::VectorXd& v);

// Columnar feature file ("MRX1"): band edges + channel names in the header,
// float32 window-major payload, per-window class and epoch ids.
void write_feature_file(const std::string& path,
                        const std::vector<FeatureMatrix>& windows,
                        const std::vector<std::string>& channel_names);
struct FeatureFile {
  std::vector<FeatureMatrix> windows;
  std::vector<std::string> channel_names;
};
FeatureFile read_feature_file(const std::string& path);

}  // namespace mindrace
