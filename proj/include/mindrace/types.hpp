#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mindrace/montage.hpp"

namespace mindrace {

struct Event {
  std::int64_t onset = 0;     // sample index
  std::string label;          // task identifier
  std::int64_t duration = 0;  // samples
};

// Multichannel recording in microvolts, rows = channels.
struct Recording {
  Eigen::MatrixXd data;
  double fs = 0.0;
  Montage montage;
  std::vector<Event> events;
  std::string subject_id;

  std::int64_t samples() const { return data.cols(); }
  std::int64_t channels() const { return data.rows(); }
};

// Diagnostics, not failures: empty iff all Recording invariants hold.
std::vector<std::string> validate_recording(const Recording& r);

struct Epoch {
  Eigen::MatrixXd data;  // channels x L, microvolts
  int class_id = -1;
  int epoch_index = 0;
  double fs = 0.0;
};

struct EpochSet {
  std::vector<Epoch> epochs;
  Montage montage;
  double fs = 0.0;

  std::size_t size() const { return epochs.size(); }
  std::vector<int> class_ids() const;
};

struct Window {
  Eigen::MatrixXd data;  // channels x W
  int parent_epoch = 0;
  std::int64_t offset = 0;  // sample offset within the epoch
  int class_id = -1;
  double fs = 0.0;
};

// Injective mapping from task label text to class id.
struct LabelScheme {
  std::map<std::string, int> label_to_class;
  std::vector<std::string> class_names;  // indexed by class id

  std::optional<int> class_of(const std::string& label) const;
  int num_classes() const { return static_cast<int>(class_names.size()); }

  static LabelScheme two_choice();      // Calm=0, Active=1
  static LabelScheme physionet_4class();  // LeftHand, RightHand, BothHands, BothLegs
  // One class per distinct event label present in the recording, ids in
  // sorted label order.
  static LabelScheme from_events(const std::vector<Event>& events);
};

}  // namespace mindrace
