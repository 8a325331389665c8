#include "mindrace/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mindrace/fft.hpp"

namespace mindrace {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// spectral synthesis of 1/f^alpha noise, unit-rms
std::vector<double> pink_noise(std::mt19937_64& rng, std::size_t n, double alpha) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::complex<double>> spec(n, {0.0, 0.0});
  const std::size_t half = n / 2;
  for (std::size_t k = 1; k <= half; ++k) {
    const double mag = std::pow(static_cast<double>(k), -alpha / 2.0);
    const std::complex<double> v{gauss(rng) * mag, gauss(rng) * mag};
    spec[k] = v;
    if (k != n - k && n - k < n) spec[n - k] = std::conj(v);
  }
  if (n % 2 == 0) spec[half] = {spec[half].real(), 0.0};
  auto x = ifft(std::move(spec));
  std::vector<double> out(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x[i].real();
    mean += out[i];
  }
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (auto& v : out) {
    v -= mean;
    var += v * v;
  }
  const double sd = std::sqrt(var / static_cast<double>(n));
  if (sd > 0)
    for (auto& v : out) v /= sd;
  return out;
}

// unit-rms sum of random-phase sinusoids inside [lo, hi)
std::vector<double> narrowband(std::mt19937_64& rng, std::size_t n, double fs,
                               double lo, double hi) {
  std::uniform_real_distribution<double> ufreq(lo, hi);
  std::uniform_real_distribution<double> uphase(0.0, kTwoPi);
  std::vector<double> out(n, 0.0);
  for (int c = 0; c < 6; ++c) {
    const double f = ufreq(rng);
    const double p = uphase(rng);
    for (std::size_t i = 0; i < n; ++i)
      out[i] += std::sin(kTwoPi * f * static_cast<double>(i) / fs + p);
  }
  double mean = 0.0;
  for (double v : out) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (auto& v : out) {
    v -= mean;
    var += v * v;
  }
  const double sd = std::sqrt(var / static_cast<double>(n));
  if (sd > 0)
    for (auto& v : out) v /= sd;
  return out;
}

}  // namespace

void validate_synth_config(const SynthConfig& cfg) {
  if (!(cfg.fs > 0)) throw std::invalid_argument("synth: fs must be positive");
  if (cfg.n_channels < 1) throw std::invalid_argument("synth: need channels");
  if (cfg.epochs_per_class < 1)
    throw std::invalid_argument("synth: epochs_per_class must be >= 1");
  if (!(cfg.epoch_len_s > 0))
    throw std::invalid_argument("synth: epoch_len_s must be positive");
  if (cfg.classes.empty()) throw std::invalid_argument("synth: no classes");
  double f_top = 0.0;
  for (const auto& c : cfg.classes)
    for (const auto& m : c.mods) {
      if (!(m.gain > 0)) throw std::invalid_argument("synth: gains must be > 0");
      if (!(m.bandwidth_hz > 0))
        throw std::invalid_argument("synth: bandwidth must be > 0");
      f_top = std::max(f_top, m.center_hz + m.bandwidth_hz);
    }
  if (cfg.fs < 2.0 * f_top)
    throw std::invalid_argument("synth: fs below Nyquist for modulated bands");
}

Recording synth_recording(const SynthConfig& cfg) {
  validate_synth_config(cfg);
  std::mt19937_64 rng(cfg.seed);

  Montage full = builtin_montage(cfg.montage_name);
  if (cfg.n_channels > static_cast<int>(full.size()))
    throw std::invalid_argument("synth: montage smaller than channel count");
  Montage mont;
  mont.channel_names.assign(full.channel_names.begin(),
                            full.channel_names.begin() + cfg.n_channels);
  mont.positions.assign(full.positions.begin(),
                        full.positions.begin() + cfg.n_channels);
  for (const auto& e : full.eye_proxy_channels)
    if (std::find(mont.channel_names.begin(), mont.channel_names.end(), e) !=
        mont.channel_names.end())
      mont.eye_proxy_channels.push_back(e);

  const std::int64_t ep_len = std::llround(cfg.epoch_len_s * cfg.fs);
  const std::int64_t gap = std::llround(cfg.gap_s * cfg.fs);
  const std::int64_t lead = std::llround(cfg.lead_in_s * cfg.fs);
  const int n_classes = static_cast<int>(cfg.classes.size());
  const int n_epochs = n_classes * cfg.epochs_per_class;
  const std::int64_t total = lead + n_epochs * (ep_len + gap);

  Recording r;
  r.fs = cfg.fs;
  r.montage = mont;
  r.subject_id = "synthetic";
  r.data.resize(cfg.n_channels, total);

  for (int ch = 0; ch < cfg.n_channels; ++ch) {
    auto noise = pink_noise(rng, static_cast<std::size_t>(total), cfg.noise_alpha);
    for (std::int64_t i = 0; i < total; ++i)
      r.data(ch, i) = cfg.noise_rms_uv * noise[i];
  }

  // epoch order: shuffled class sequence
  std::vector<int> order;
  for (int c = 0; c < n_classes; ++c)
    for (int k = 0; k < cfg.epochs_per_class; ++k) order.push_back(c);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::int64_t> onsets(n_epochs);
  for (int k = 0; k < n_epochs; ++k) onsets[k] = lead + k * (ep_len + gap);

  // persistent narrowband components, gain-modulated per class epoch
  struct Comp {
    std::size_t channel;
    double lo, hi;
    std::map<int, double> gain_by_class;  // class index in cfg.classes order
  };
  std::vector<Comp> comps;
  for (int ci = 0; ci < n_classes; ++ci) {
    for (const auto& m : cfg.classes[ci].mods) {
      auto idx = mont.index_of(m.channel);
      if (!idx) throw std::invalid_argument("synth: mod channel not in montage: " + m.channel);
      const double lo = m.center_hz - m.bandwidth_hz / 2.0;
      const double hi = m.center_hz + m.bandwidth_hz / 2.0;
      bool merged = false;
      for (auto& c : comps)
        if (c.channel == *idx && c.lo == lo && c.hi == hi) {
          c.gain_by_class[ci] = m.gain;
          merged = true;
          break;
        }
      if (!merged)
        comps.push_back(Comp{*idx, lo, hi, {{ci, m.gain}}});
    }
  }
  for (const auto& c : comps) {
    auto nb = narrowband(rng, static_cast<std::size_t>(total), cfg.fs, c.lo, c.hi);
    std::vector<double> g(total, 1.0);
    for (int k = 0; k < n_epochs; ++k) {
      auto it = c.gain_by_class.find(order[k]);
      if (it == c.gain_by_class.end()) continue;
      for (std::int64_t i = onsets[k]; i < onsets[k] + ep_len; ++i) g[i] = it->second;
    }
    for (std::int64_t i = 0; i < total; ++i)
      r.data(c.channel, i) += cfg.band_rms_uv * g[i] * nb[i];
  }

  // blink artifacts
  if (cfg.blink_rate_per_min > 0) {
    std::vector<BlinkChannel> targets = cfg.blink_channels;
    if (targets.empty())
      for (const auto& e : mont.eye_proxy_channels) targets.push_back({e, 1.0});
    const std::int64_t pulse_len = std::llround(0.3 * cfg.fs);
    std::vector<double> pulse(pulse_len);
    for (std::int64_t i = 0; i < pulse_len; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(pulse_len);
      pulse[i] = std::sin(kTwoPi * t) * (0.5 - 0.5 * std::cos(kTwoPi * t));
    }
    const double duration_min = static_cast<double>(total) / cfg.fs / 60.0;
    std::poisson_distribution<int> pcount(cfg.blink_rate_per_min * duration_min);
    const int n_blinks = pcount(rng);
    std::uniform_int_distribution<std::int64_t> upos(0, total - pulse_len - 1);
    std::vector<std::int64_t> times(n_blinks);
    for (auto& t : times) t = upos(rng);
    for (const auto& tgt : targets) {
      auto idx = mont.index_of(tgt.name);
      if (!idx) continue;
      for (auto t0 : times)
        for (std::int64_t i = 0; i < pulse_len; ++i)
          r.data(*idx, t0 + i) += cfg.blink_amplitude_uv * tgt.weight * pulse[i];
    }
  }

  for (int k = 0; k < n_epochs; ++k)
    r.events.push_back(Event{onsets[k], cfg.classes[order[k]].name, ep_len});
  return r;
}

SynthConfig SynthConfig::from_json(const nlohmann::json& j) {
  SynthConfig c;
  c.fs = j.value("fs", c.fs);
  c.n_channels = j.value("channels", c.n_channels);
  c.montage_name = j.value("montage", c.montage_name);
  c.epoch_len_s = j.value("epoch_len_s", c.epoch_len_s);
  c.epochs_per_class = j.value("epochs_per_class", c.epochs_per_class);
  c.gap_s = j.value("gap_s", c.gap_s);
  c.lead_in_s = j.value("lead_in_s", c.lead_in_s);
  if (j.contains("noise")) {
    c.noise_alpha = j["noise"].value("alpha", c.noise_alpha);
    c.noise_rms_uv = j["noise"].value("rms_uv", c.noise_rms_uv);
  }
  c.band_rms_uv = j.value("band_rms_uv", c.band_rms_uv);
  for (const auto& cj : j.value("classes", nlohmann::json::array())) {
    SynthClass sc;
    sc.id = cj.value("id", static_cast<int>(c.classes.size()));
    sc.name = cj.value("name", "class" + std::to_string(sc.id));
    for (const auto& mj : cj.value("mods", nlohmann::json::array())) {
      BandMod m;
      m.channel = mj.at("channel").get<std::string>();
      m.center_hz = mj.at("center_hz").get<double>();
      m.bandwidth_hz = mj.value("bandwidth_hz", 2.0);
      m.gain = mj.value("gain", 1.0);
      sc.mods.push_back(std::move(m));
    }
    c.classes.push_back(std::move(sc));
  }
  if (j.contains("blinks")) {
    const auto& b = j["blinks"];
    c.blink_rate_per_min = b.value("rate_per_min", 0.0);
    c.blink_amplitude_uv = b.value("amplitude_uv", 150.0);
    for (const auto& bj : b.value("channels", nlohmann::json::array()))
      c.blink_channels.push_back(
          {bj.at("name").get<std::string>(), bj.value("weight", 1.0)});
  }
  c.seed = j.value("seed", c.seed);
  return c;
}

nlohmann::json SynthConfig::to_json() const {
  nlohmann::json j;
  j["fs"] = fs;
  j["channels"] = n_channels;
  j["montage"] = montage_name;
  j["epoch_len_s"] = epoch_len_s;
  j["epochs_per_class"] = epochs_per_class;
  j["gap_s"] = gap_s;
  j["lead_in_s"] = lead_in_s;
  j["noise"] = {{"alpha", noise_alpha}, {"rms_uv", noise_rms_uv}};
  j["band_rms_uv"] = band_rms_uv;
  nlohmann::json cls = nlohmann::json::array();
  for (const auto& c : classes) {
    nlohmann::json cj;
    cj["id"] = c.id;
    cj["name"] = c.name;
    nlohmann::json mods = nlohmann::json::array();
    for (const auto& m : c.mods)
      mods.push_back({{"channel", m.channel},
                      {"center_hz", m.center_hz},
                      {"bandwidth_hz", m.bandwidth_hz},
                      {"gain", m.gain}});
    cj["mods"] = mods;
    cls.push_back(cj);
  }
  j["classes"] = cls;
  if (blink_rate_per_min > 0) {
    nlohmann::json b;
    b["rate_per_min"] = blink_rate_per_min;
    b["amplitude_uv"] = blink_amplitude_uv;
    nlohmann::json chans = nlohmann::json::array();
    for (const auto& bc : blink_channels)
      chans.push_back({{"name", bc.name}, {"weight", bc.weight}});
    b["channels"] = chans;
    j["blinks"] = b;
  }
  j["seed"] = seed;
  return j;
}

}  // namespace mindrace
