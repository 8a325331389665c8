#include "mindrace/types.hpp"

#include <algorithm>
#include <set>

namespace mindrace {

std::vector<std::string> validate_recording(const Recording& r) {
  std::vector<std::string> diags;
  if (r.data.rows() != static_cast<Eigen::Index>(r.montage.size()))
    diags.push_back("channel count mismatch: data rows " +
                    std::to_string(r.data.rows()) + " vs montage " +
                    std::to_string(r.montage.size()));
  if (!(r.fs > 0.0)) diags.push_back("sampling rate must be positive");
  for (const auto& e : r.events) {
    if (e.onset < 0 || e.onset >= r.samples())
      diags.push_back("event out of range: onset " + std::to_string(e.onset));
    if (e.duration < 0)
      diags.push_back("event with negative duration at onset " +
                      std::to_string(e.onset));
  }
  for (const auto& d : r.montage.validate()) diags.push_back(d);
  return diags;
}

std::vector<int> EpochSet::class_ids() const {
  std::vector<int> ids;
  ids.reserve(epochs.size());
  for (const auto& e : epochs) ids.push_back(e.class_id);
  return ids;
}

std::optional<int> LabelScheme::class_of(const std::string& label) const {
  auto it = label_to_class.find(label);
  if (it == label_to_class.end()) return std::nullopt;
  return it->second;
}

LabelScheme LabelScheme::two_choice() {
  LabelScheme s;
  s.label_to_class = {{"Calm", 0}, {"Active", 1}};
  s.class_names = {"Calm", "Active"};
  return s;
}

LabelScheme LabelScheme::physionet_4class() {
  LabelScheme s;
  s.label_to_class = {
      {"LeftHand", 0}, {"RightHand", 1}, {"BothHands", 2}, {"BothLegs", 3}};
  s.class_names = {"LeftHand", "RightHand", "BothHands", "BothLegs"};
  return s;
}

LabelScheme LabelScheme::from_events(const std::vector<Event>& events) {
  std::set<std::string> labels;
  for (const auto& e : events) labels.insert(e.label);
  LabelScheme s;
  for (const auto& l : labels) {
    s.label_to_class[l] = static_cast<int>(s.class_names.size());
    s.class_names.push_back(l);
  }
  return s;
}

}  // namespace mindrace
