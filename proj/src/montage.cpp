#include "mindrace/montage.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace mindrace {

namespace {

const std::vector<std::string> k1020_64 = {
    "FC5", "FC3", "FC1", "FCz", "FC2", "FC4", "FC6", "C5",  "C3",  "C1",  "Cz",
    "C2",  "C4",  "C6",  "CP5", "CP3", "CP1", "CPz", "CP2", "CP4", "CP6", "Fp1",
    "Fpz", "Fp2", "AF7", "AF3", "AFz", "AF4", "AF8", "F7",  "F5",  "F3",  "F1",
    "Fz",  "F2",  "F4",  "F6",  "F8",  "FT7", "FT8", "T7",  "T8",  "T9",  "T10",
    "TP7", "TP8", "P7",  "P5",  "P3",  "P1",  "Pz",  "P2",  "P4",  "P6",  "P8",
    "PO7", "PO3", "POz", "PO4", "PO8", "O1",  "Oz",  "O2",  "Iz"};

const std::vector<std::string> k1020_19 = {
    "Fp1", "Fp2", "F7", "F3", "Fz", "F4", "F8", "T7", "C3", "Cz",
    "C4",  "T8",  "P7", "P3", "Pz", "P4", "P8", "O1", "O2"};

const std::vector<std::string> kDefaultEyeProxies = {"Fp1", "Fp2", "AF7", "AF8"};

std::string upper(const std::string& s) {
  std::string r = s;
  std::transform(r.begin(), r.end(), r.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return r;
}

// anterior-posterior tilt per electrode row, degrees (front positive)
const std::unordered_map<std::string, double> kRowAngle = {
    {"FP", 72.0}, {"AF", 54.0}, {"F", 36.0},   {"FC", 18.0}, {"FT", 18.0},
    {"C", 0.0},   {"T", 0.0},   {"CP", -18.0}, {"TP", -18.0}, {"P", -36.0},
    {"PO", -54.0}, {"O", -72.0}, {"I", -90.0},  {"N", 90.0}};

}  // namespace

std::optional<Eigen::Vector3d> standard_1020_position(const std::string& name) {
  const std::string u = upper(name);
  std::size_t i = 0;
  while (i < u.size() && std::isalpha(static_cast<unsigned char>(u[i]))) ++i;
  std::string row = u.substr(0, i);
  std::string suffix = u.substr(i);
  if (suffix.empty()) {
    if (row.size() < 2 || row.back() != 'Z') return std::nullopt;
    suffix = "Z";
    row.pop_back();
  }
  auto it = kRowAngle.find(row);
  if (it == kRowAngle.end()) return std::nullopt;

  double lateral = 0.0;
  if (suffix != "Z") {
    int n = 0;
    for (char c : suffix) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      n = n * 10 + (c - '0');
    }
    if (n < 1 || n > 10) return std::nullopt;
    double ang;
    if (n >= 9)
      ang = 90.0;
    else if (n >= 7)
      ang = 72.0;
    else
      ang = ((n + 1) / 2) * 18.0;
    lateral = (n % 2 == 1) ? -ang : ang;  // odd = left
  }
  const double a = it->second * std::numbers::pi / 180.0;
  const double b = lateral * std::numbers::pi / 180.0;
  return Eigen::Vector3d(std::sin(b), std::cos(b) * std::sin(a),
                         std::cos(b) * std::cos(a));
}

std::optional<std::size_t> Montage::index_of(const std::string& name) const {
  const std::string u = upper(name);
  for (std::size_t i = 0; i < channel_names.size(); ++i)
    if (upper(channel_names[i]) == u) return i;
  return std::nullopt;
}

std::vector<std::size_t> Montage::eye_proxy_indices() const {
  std::vector<std::size_t> idx;
  for (const auto& n : eye_proxy_channels)
    if (auto i = index_of(n)) idx.push_back(*i);
  return idx;
}

std::vector<std::string> Montage::validate() const {
  std::vector<std::string> diags;
  if (positions.size() != channel_names.size())
    diags.push_back("montage position count mismatch");
  for (std::size_t i = 0; i < positions.size(); ++i)
    if (std::abs(positions[i].norm() - 1.0) > 1e-6)
      diags.push_back("position of " + channel_names[i] + " not unit norm");
  std::unordered_set<std::string> seen;
  for (const auto& n : channel_names)
    if (!seen.insert(upper(n)).second) diags.push_back("duplicate channel " + n);
  for (const auto& n : eye_proxy_channels)
    if (!index_of(n)) diags.push_back("eye proxy " + n + " not in montage");
  return diags;
}

Montage montage_from_names(const std::vector<std::string>& names) {
  Montage m;
  m.channel_names = names;
  m.positions.reserve(names.size());
  for (const auto& n : names) {
    auto p = standard_1020_position(n);
    if (!p) throw std::runtime_error("unknown 10-20 electrode name: " + n);
    m.positions.push_back(*p);
  }
  for (const auto& e : kDefaultEyeProxies)
    if (m.index_of(e)) m.eye_proxy_channels.push_back(e);
  return m;
}

Montage builtin_montage(const std::string& layout_name) {
  if (layout_name == "1020-64") return montage_from_names(k1020_64);
  if (layout_name == "1020-63") {
    std::vector<std::string> names;
    for (const auto& n : k1020_64)
      if (upper(n) != "POZ") names.push_back(n);
    return montage_from_names(names);
  }
  if (layout_name == "1020-19") return montage_from_names(k1020_19);
  throw std::runtime_error("unknown montage layout: " + layout_name);
}

}  // namespace mindrace
