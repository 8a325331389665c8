#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mindrace/types.hpp"

namespace mindrace {

// Narrowband component whose amplitude is scaled while the owning class's
// epochs are active: band = [center - bandwidth/2, center + bandwidth/2).
struct BandMod {
  std::string channel;
  double center_hz = 0.0;
  double bandwidth_hz = 2.0;
  double gain = 1.0;
};

struct SynthClass {
  int id = 0;
  std::string name;
  std::vector<BandMod> mods;
};

struct BlinkChannel {
  std::string name;
  double weight = 1.0;
};

struct SynthConfig {
  double fs = 160.0;
  int n_channels = 19;
  std::string montage_name = "1020-19";
  double epoch_len_s = 4.0;
  int epochs_per_class = 20;
  double gap_s = 0.25;
  double lead_in_s = 1.0;
  double noise_alpha = 1.2;   // background 1/f^alpha exponent
  double noise_rms_uv = 12.0;
  double band_rms_uv = 8.0;   // baseline narrowband component amplitude
  std::vector<SynthClass> classes;
  double blink_rate_per_min = 0.0;
  double blink_amplitude_uv = 150.0;
  std::vector<BlinkChannel> blink_channels;  // empty -> eye proxies at 1.0
  std::uint64_t seed = 1;

  static SynthConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Throws std::invalid_argument on violated config invariants.
void validate_synth_config(const SynthConfig& cfg);

// Deterministic for a fixed seed. Background is per-channel 1/f^alpha noise;
// each configured band component persists through the whole recording and is
// scaled by the active class's gain during that class's epochs; biphasic
// raised-cosine blink pulses land on the configured channels at Poisson
// times. One event per epoch, labeled with the class name.
Recording synth_recording(const SynthConfig& cfg);

}  // namespace mindrace
