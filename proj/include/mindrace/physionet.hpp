#pragma once

#include <optional>
#include <set>
#include <string>

namespace mindrace {

// Class ids follow LabelScheme::physionet_4class().
enum class MiClass { left_hand = 0, right_hand = 1, both_hands = 2, both_legs = 3 };

// Maps a run's annotation label to one of the four imagined-MI classes.
// Runs 4/8/12 are imagined left-vs-right fist, runs 6/10/14 imagined
// fists-vs-feet; baseline and executed-movement runs carry no class, as does
// the between-task label T0.
std::optional<MiClass> physionet_class_map(int run_index,
                                           const std::string& annotation_label);

// Subjects excluded for incorrect labels (89) or deviating timing/sampling
// (88, 92, 100).
const std::set<int>& excluded_subjects();

// Parses "S042R06.edf" style basenames -> (subject, run).
std::optional<std::pair<int, int>> parse_physionet_name(const std::string& filename);

const char* mi_class_name(MiClass c);

}  // namespace mindrace
