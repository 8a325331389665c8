#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace mindrace {

// Scalp layout: channel names with unit-sphere positions and the subset of
// channels used as eye-activity proxies (no dedicated EOG hardware).
struct Montage {
  std::vector<std::string> channel_names;
  std::vector<Eigen::Vector3d> positions;
  std::vector<std::string> eye_proxy_channels;

  std::size_t size() const { return channel_names.size(); }
  std::optional<std::size_t> index_of(const std::string& name) const;
  std::vector<std::size_t> eye_proxy_indices() const;
  std::vector<std::string> validate() const;
};

// Position of a 10-20/10-10 electrode name on the unit sphere, computed from
// the row (anterior-posterior) and column (lateral) angles of the extended
// 10-20 grid. x = right, y = front, z = up. Unknown names -> nullopt.
std::optional<Eigen::Vector3d> standard_1020_position(const std::string& name);

// Built-in layouts. "1020-64" is the 64-name set used by 64-channel 10-20
// recording caps; "1020-63" drops POz (reference electrode); "1020-19" is the
// classic 19-channel clinical set. Eye proxies default to
// {Fp1, Fp2, AF7, AF8} intersected with the available channels.
Montage builtin_montage(const std::string& layout_name);

// Montage over an explicit name list, positions from the standard grid.
Montage montage_from_names(const std::vector<std::string>& names);

}  // namespace mindrace
