#include "mindrace/container.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "mindrace/framed_file.hpp"

namespace mindrace {

static_assert(std::endian::native == std::endian::little,
              "container i/o assumes a little-endian host");

namespace {

constexpr const char* kMagic = "MRC1";

nlohmann::json montage_to_json(const Montage& m) {
  nlohmann::json j;
  j["channel_names"] = m.channel_names;
  nlohmann::json pos = nlohmann::json::array();
  for (const auto& p : m.positions) pos.push_back({p.x(), p.y(), p.z()});
  j["positions"] = pos;
  j["eye_proxy_channels"] = m.eye_proxy_channels;
  return j;
}

Montage montage_from_json(const nlohmann::json& j) {
  Montage m;
  m.channel_names = j.at("channel_names").get<std::vector<std::string>>();
  for (const auto& p : j.at("positions"))
    m.positions.emplace_back(p.at(0).get<double>(), p.at(1).get<double>(),
                             p.at(2).get<double>());
  m.eye_proxy_channels =
      j.at("eye_proxy_channels").get<std::vector<std::string>>();
  return m;
}

}  // namespace

void write_container(const Recording& r, const std::string& path,
                     SampleEncoding enc) {
  const auto rows = r.data.rows();
  const auto cols = r.data.cols();
  nlohmann::json h;
  h["fs"] = r.fs;
  h["channels"] = rows;
  h["samples"] = cols;
  h["subject_id"] = r.subject_id;
  h["montage"] = montage_to_json(r.montage);
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& e : r.events) ev.push_back({e.onset, e.duration, e.label});
  h["events"] = ev;

  std::vector<std::byte> payload;
  if (enc == SampleEncoding::f32) {
    h["encoding"] = "f32";
    payload.reserve(static_cast<std::size_t>(rows) * cols * 4);
    for (Eigen::Index c = 0; c < rows; ++c)
      for (Eigen::Index s = 0; s < cols; ++s)
        append_f32(payload, static_cast<float>(r.data(c, s)));
  } else {
    h["encoding"] = "i16";
    nlohmann::json scales = nlohmann::json::array();
    payload.reserve(static_cast<std::size_t>(rows) * cols * 2);
    for (Eigen::Index c = 0; c < rows; ++c) {
      double lo = 0.0, hi = 0.0;
      if (cols > 0) {
        lo = r.data.row(c).minCoeff();
        hi = r.data.row(c).maxCoeff();
      }
      if (hi <= lo) hi = lo + 1.0;
      const double step = (hi - lo) / 65535.0;
      scales.push_back({lo, hi});
      for (Eigen::Index s = 0; s < cols; ++s) {
        const double q = std::round((r.data(c, s) - lo) / step) - 32768.0;
        append_i16(payload, static_cast<std::int16_t>(
                                std::clamp(q, -32768.0, 32767.0)));
      }
    }
    h["i16_ranges"] = scales;
  }
  write_framed(path, kMagic, h, payload.data(), payload.size());
}

Recording read_container(const std::string& path) {
  FramedFile f = read_framed(path, kMagic, "container");
  Recording r;
  r.fs = f.header.at("fs").get<double>();
  r.subject_id = f.header.value("subject_id", "");
  r.montage = montage_from_json(f.header.at("montage"));
  for (const auto& e : f.header.at("events"))
    r.events.push_back(Event{e.at(0).get<std::int64_t>(), e.at(2).get<std::string>(),
                             e.at(1).get<std::int64_t>()});
  const auto rows = f.header.at("channels").get<Eigen::Index>();
  const auto cols = f.header.at("samples").get<Eigen::Index>();
  const std::string enc = f.header.at("encoding").get<std::string>();
  r.data.resize(rows, cols);
  const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  if (enc == "f32") {
    if (f.payload.size() != n * 4)
      throw std::runtime_error("corrupt container: payload size mismatch: " + path);
    const float* p = reinterpret_cast<const float*>(f.payload.data());
    for (Eigen::Index c = 0; c < rows; ++c)
      for (Eigen::Index s = 0; s < cols; ++s)
        r.data(c, s) = static_cast<double>(*p++);
  } else if (enc == "i16") {
    if (f.payload.size() != n * 2)
      throw std::runtime_error("corrupt container: payload size mismatch: " + path);
    const auto& ranges = f.header.at("i16_ranges");
    const std::int16_t* p = reinterpret_cast<const std::int16_t*>(f.payload.data());
    for (Eigen::Index c = 0; c < rows; ++c) {
      const double lo = ranges.at(c).at(0).get<double>();
      const double hi = ranges.at(c).at(1).get<double>();
      const double step = (hi - lo) / 65535.0;
      for (Eigen::Index s = 0; s < cols; ++s)
        r.data(c, s) = lo + (static_cast<double>(*p++) + 32768.0) * step;
    }
  } else {
    throw std::runtime_error("corrupt container: unknown encoding: " + enc);
  }
  return r;
}

}  // namespace mindrace
