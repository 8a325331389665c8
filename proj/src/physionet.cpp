#include "mindrace/physionet.hpp"

#include <cctype>

namespace mindrace {

std::optional<MiClass> physionet_class_map(int run_index,
                                           const std::string& label) {
  const bool left_right = run_index == 4 || run_index == 8 || run_index == 12;
  const bool hands_feet = run_index == 6 || run_index == 10 || run_index == 14;
  if (!left_right && !hands_feet) return std::nullopt;  // baseline or executed
  if (label == "T1") return left_right ? MiClass::left_hand : MiClass::both_hands;
  if (label == "T2") return left_right ? MiClass::right_hand : MiClass::both_legs;
  return std::nullopt;  // T0 rest or unknown
}

const std::set<int>& excluded_subjects() {
  static const std::set<int> k{88, 89, 92, 100};
  return k;
}

std::optional<std::pair<int, int>> parse_physionet_name(const std::string& filename) {
  // expect S###R##.edf, case-insensitive, possibly with a leading path
  std::string base = filename;
  if (auto slash = base.find_last_of("/\\"); slash != std::string::npos)
    base = base.substr(slash + 1);
  if (base.size() < 8) return std::nullopt;
  if (std::toupper(static_cast<unsigned char>(base[0])) != 'S') return std::nullopt;
  std::size_t i = 1;
  int subject = 0, digits = 0;
  while (i < base.size() && std::isdigit(static_cast<unsigned char>(base[i]))) {
    subject = subject * 10 + (base[i] - '0');
    ++i;
    ++digits;
  }
  if (digits == 0 || i >= base.size() ||
      std::toupper(static_cast<unsigned char>(base[i])) != 'R')
    return std::nullopt;
  ++i;
  int run = 0;
  digits = 0;
  while (i < base.size() && std::isdigit(static_cast<unsigned char>(base[i]))) {
    run = run * 10 + (base[i] - '0');
    ++i;
    ++digits;
  }
  if (digits == 0) return std::nullopt;
  return std::make_pair(subject, run);
}

const char* mi_class_name(MiClass c) {
  switch (c) {
    case MiClass::left_hand: return "LeftHand";
    case MiClass::right_hand: return "RightHand";
    case MiClass::both_hands: return "BothHands";
    case MiClass::both_legs: return "BothLegs";
  }
  return "?";
}

}  // namespace mindrace
