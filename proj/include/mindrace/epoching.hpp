#pragma once

#include <string>
#include <vector>

#include "mindrace/types.hpp"

namespace mindrace {

// One epoch per event whose label maps to a class; epoch data covers
// [onset, onset + round(epoch_len_s*fs)). Events whose epoch would overrun
// the recording are skipped with a warning.
EpochSet epochs_from_events(const Recording& r, const LabelScheme& scheme,
                            double epoch_len_s,
                            std::vector<std::string>* warnings = nullptr);

}  // namespace mindrace
