#include "mindrace/epoching.hpp"

#include <algorithm>
#include <cmath>

namespace mindrace {

EpochSet epochs_from_events(const Recording& r, const LabelScheme& scheme,
                            double epoch_len_s,
                            std::vector<std::string>* warnings) {
  const std::int64_t len = std::llround(epoch_len_s * r.fs);
  std::vector<Event> mapped;
  for (const auto& e : r.events)
    if (scheme.class_of(e.label)) mapped.push_back(e);
  std::stable_sort(mapped.begin(), mapped.end(),
                   [](const Event& a, const Event& b) { return a.onset < b.onset; });

  EpochSet set;
  set.montage = r.montage;
  set.fs = r.fs;
  int index = 0;
  for (const auto& e : mapped) {
    if (e.onset + len > r.samples()) {
      if (warnings)
        warnings->push_back("skipped event '" + e.label + "' at sample " +
                            std::to_string(e.onset) + ": epoch overruns recording");
      continue;
    }
    Epoch ep;
    ep.data = r.data.middleCols(e.onset, len);
    ep.class_id = *scheme.class_of(e.label);
    ep.epoch_index = index++;
    ep.fs = r.fs;
    set.epochs.push_back(std::move(ep));
  }
  return set;
}

}  // namespace mindrace
