#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "mindrace/types.hpp"

namespace mindrace {

// Calibration artifact of the online FASTER path: globally bad channels plus
// the ICA route fitted on the good channels. whitening has zero columns and
// mixing zero rows at bad-channel positions, so both apply directly to
// full-channel windows.
struct FasterModel {
  std::vector<std::string> bad_channels;
  Eigen::MatrixXd whitening;        // k x c
  Eigen::MatrixXd unmixing;         // k x k
  Eigen::MatrixXd mixing;           // c x k
  std::vector<int> rejected_components;  // indices into [0, k)
  Eigen::VectorXd channel_means;    // length c, zeros at bad channels
  Montage montage;
  bool ica_converged = true;

  std::vector<std::size_t> bad_indices() const;
  int component_count() const { return static_cast<int>(unmixing.rows()); }
};

void save_faster_model(const FasterModel& m, const std::string& path);
FasterModel load_faster_model(const std::string& path);

// One metric family over a set of items, with the z-scores and the rejects
// the |z| > 3 rule produced (kept so every decision can be re-derived).
struct MetricTable {
  std::vector<std::string> metric_names;
  Eigen::MatrixXd values;   // items x metrics
  Eigen::MatrixXd zvalues;  // same shape
  std::vector<int> rejected;
};

struct FasterReport {
  MetricTable channels;
  MetricTable epochs;
  MetricTable components;
  std::vector<MetricTable> epoch_channels;  // step 4, one per surviving epoch
  std::vector<std::string> warnings;
};

// Step 1: variance, mean absolute channel correlation (sign-flipped so low
// correlation scores positive), Hurst exponent; any |z| > 3 rejects the
// channel. Requires >= 4 channels and >= 2 epochs.
MetricTable detect_bad_channels(const EpochSet& epochs);

// Step 2 (offline only): per-epoch mean amplitude range, mean deviation from
// the per-channel grand mean, mean variance. Requires >= 3 epochs.
struct EpochRejection {
  EpochSet kept;
  std::vector<int> rejected;
  MetricTable table;
};
EpochRejection reject_bad_epochs(const EpochSet& epochs);

// Step 3 metrics over independent components: EOG correlation, excess
// kurtosis, power-spectrum slope over [25, min(45, fs/2-1)] Hz, Hurst
// exponent, median gradient. `eog` may have zero rows (metric skipped with a
// warning). Requires >= 3 components.
MetricTable detect_bad_components(const Eigen::MatrixXd& components,
                                  const Eigen::MatrixXd& eog, double fs,
                                  std::vector<std::string>* warnings = nullptr);

// Step 4 metrics for one epoch, z-scored across channels.
MetricTable epoch_channel_metrics(const Eigen::MatrixXd& epoch_data);

struct FasterResult {
  EpochSet cleaned;
  FasterModel model;
  FasterReport report;
};

// Offline calibration: bad channels -> interpolation -> epoch rejection ->
// ICA on good channels -> component rejection and reconstruction -> per-epoch
// channel repair. Requires >= 8 epochs.
FasterResult faster_offline(const EpochSet& epochs, std::uint64_t seed);

// Online application to a single window; pure function of (model, window).
Eigen::MatrixXd faster_online_apply(const FasterModel& model,
                                    const Eigen::MatrixXd& window);

}  // namespace mindrace
