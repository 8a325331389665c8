#include "mindrace/edf.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mindrace {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n\0", 0, 5);
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n\0", std::string::npos, 5);
  return s.substr(b, e - b + 1);
}

std::string strip_label(const std::string& s) {
  // PhysioNet pads electrode labels with trailing dots ("Fc5.")
  std::string t = trim(s);
  while (!t.empty() && t.back() == '.') t.pop_back();
  return t;
}

double parse_num(const std::string& s, const std::string& what,
                 const std::string& path) {
  try {
    return std::stod(trim(s));
  } catch (const std::exception&) {
    throw std::runtime_error("corrupt EDF (" + what + "): " + path);
  }
}

std::string read_field(std::ifstream& is, std::size_t n,
                       const std::string& path) {
  std::string s(n, '\0');
  if (!is.read(s.data(), static_cast<std::streamsize>(n)))
    throw std::runtime_error("corrupt EDF (truncated header): " + path);
  return s;
}

// deterministic fallback placement for labels outside the 10-20 grid
Eigen::Vector3d spiral_position(std::size_t i, std::size_t n) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - 0.8 * (static_cast<double>(i) + 0.5) /
                             static_cast<double>(std::max<std::size_t>(n, 1));
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double a = golden * static_cast<double>(i);
  return {r * std::cos(a), r * std::sin(a), z};
}

struct Tal {
  double onset = 0.0;
  std::vector<std::string> labels;
};

// Parse one record's annotation bytes into timestamped annotation lists.
std::vector<Tal> parse_tals(const std::string& raw) {
  std::vector<Tal> out;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] == '\0') {
      ++i;
      continue;
    }
    std::size_t end = raw.find('\0', i);
    if (end == std::string::npos) end = raw.size();
    const std::string tal = raw.substr(i, end - i);
    i = end + 1;
    const std::size_t t14 = tal.find('\x14');
    if (t14 == std::string::npos) continue;
    std::string timepart = tal.substr(0, t14);
    const std::size_t t15 = timepart.find('\x15');
    if (t15 != std::string::npos) timepart = timepart.substr(0, t15);
    Tal t;
    try {
      t.onset = std::stod(timepart);
    } catch (const std::exception&) {
      continue;
    }
    std::size_t p = t14 + 1;
    while (p < tal.size()) {
      std::size_t q = tal.find('\x14', p);
      if (q == std::string::npos) q = tal.size();
      const std::string label = tal.substr(p, q - p);
      if (!label.empty()) t.labels.push_back(label);
      p = q + 1;
    }
    out.push_back(std::move(t));
  }
  return out;
}

double unit_scale_to_uv(const std::string& dim) {
  const std::string d = trim(dim);
  if (d == "mV") return 1e3;
  if (d == "V") return 1e6;
  return 1.0;  // uV or unknown: taken as microvolts
}

}  // namespace

Recording read_edf(const std::string& path, std::optional<Montage> montage_override) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);

  const std::string version = read_field(is, 8, path);
  if (trim(version) != "0")
    throw std::runtime_error("unsupported EDF variant (non-16-bit encoding): " + path);
  read_field(is, 80, path);  // patient id
  read_field(is, 80, path);  // recording id
  read_field(is, 8, path);   // start date
  read_field(is, 8, path);   // start time
  const std::string header_bytes_s = read_field(is, 8, path);
  const std::string reserved = read_field(is, 44, path);
  if (trim(reserved) == "EDF+D")
    throw std::runtime_error("unsupported EDF variant (discontinuous records): " + path);
  long n_records = static_cast<long>(parse_num(read_field(is, 8, path), "record count", path));
  const double record_s = parse_num(read_field(is, 8, path), "record duration", path);
  const int ns = static_cast<int>(parse_num(read_field(is, 4, path), "signal count", path));
  if (ns <= 0) throw std::runtime_error("corrupt EDF (no signals): " + path);

  auto read_per_signal = [&](std::size_t w) {
    std::vector<std::string> v(ns);
    for (int s = 0; s < ns; ++s) v[s] = read_field(is, w, path);
    return v;
  };
  const auto labels = read_per_signal(16);
  read_per_signal(80);  // transducer
  const auto dims = read_per_signal(8);
  const auto phys_min = read_per_signal(8);
  const auto phys_max = read_per_signal(8);
  const auto dig_min = read_per_signal(8);
  const auto dig_max = read_per_signal(8);
  read_per_signal(80);  // prefiltering
  const auto nsamp = read_per_signal(8);
  read_per_signal(32);  // reserved

  const long expect_hdr = 256L * (ns + 1);
  if (static_cast<long>(parse_num(header_bytes_s, "header bytes", path)) != expect_hdr)
    throw std::runtime_error("corrupt EDF (header size mismatch): " + path);

  std::vector<int> spr(ns);
  std::vector<bool> is_annot(ns, false);
  int annot_idx = -1;
  for (int s = 0; s < ns; ++s) {
    spr[s] = static_cast<int>(parse_num(nsamp[s], "samples per record", path));
    if (spr[s] <= 0)
      throw std::runtime_error("corrupt EDF (bad samples-per-record): " + path);
    if (trim(labels[s]) == "EDF Annotations") {
      is_annot[s] = true;
      annot_idx = s;
    }
  }
  int spr_data = -1;
  std::vector<int> data_signals;
  for (int s = 0; s < ns; ++s) {
    if (is_annot[s]) continue;
    if (spr_data < 0) spr_data = spr[s];
    if (spr[s] != spr_data)
      throw std::runtime_error("corrupt EDF (inconsistent record sizes): " + path);
    data_signals.push_back(s);
  }

  const int n_data = static_cast<int>(data_signals.size());
  std::vector<double> gain(ns, 1.0), offset(ns, 0.0);
  for (int s : data_signals) {
    const double pmin = parse_num(phys_min[s], "physical min", path);
    const double pmax = parse_num(phys_max[s], "physical max", path);
    const double dmin = parse_num(dig_min[s], "digital min", path);
    const double dmax = parse_num(dig_max[s], "digital max", path);
    if (dmax == dmin)
      throw std::runtime_error("corrupt EDF (degenerate digital range): " + path);
    const double u = unit_scale_to_uv(dims[s]);
    gain[s] = u * (pmax - pmin) / (dmax - dmin);
    offset[s] = u * pmin - gain[s] * dmin;
  }

  // total record size in bytes
  long rec_bytes = 0;
  for (int s = 0; s < ns; ++s) rec_bytes += 2L * spr[s];

  if (n_records < 0) {
    // unknown count: infer from file size
    is.seekg(0, std::ios::end);
    const long total = static_cast<long>(is.tellg()) - expect_hdr;
    is.seekg(expect_hdr, std::ios::beg);
    if (total < 0 || (rec_bytes > 0 && total % rec_bytes != 0))
      throw std::runtime_error("corrupt EDF (truncated payload): " + path);
    n_records = rec_bytes > 0 ? total / rec_bytes : 0;
  }

  double fs = 0.0;
  if (n_data > 0) {
    if (!(record_s > 0.0))
      throw std::runtime_error("corrupt EDF (non-positive record duration): " + path);
    fs = spr_data / record_s;
  }

  Recording r;
  r.fs = fs;
  const long total_samples = n_records * (n_data > 0 ? spr_data : 0);
  r.data.resize(n_data, total_samples);

  std::vector<Event> events;
  std::vector<char> rec(static_cast<std::size_t>(rec_bytes));
  for (long k = 0; k < n_records; ++k) {
    if (!is.read(rec.data(), rec_bytes))
      throw std::runtime_error("corrupt EDF (truncated payload): " + path);
    std::size_t off = 0;
    int row = 0;
    for (int s = 0; s < ns; ++s) {
      if (is_annot[s]) {
        const std::string raw(rec.data() + off, 2UL * spr[s]);
        for (const auto& tal : parse_tals(raw))
          for (const auto& lab : tal.labels)
            events.push_back(
                Event{static_cast<std::int64_t>(std::llround(tal.onset * fs)), lab, 0});
        off += 2UL * spr[s];
        continue;
      }
      for (int i = 0; i < spr[s]; ++i) {
        std::int16_t v;
        std::memcpy(&v, rec.data() + off, 2);
        off += 2;
        r.data(row, k * spr_data + i) = gain[s] * v + offset[s];
      }
      ++row;
    }
  }
  (void)annot_idx;
  r.events = std::move(events);

  if (montage_override) {
    r.montage = *montage_override;
  } else {
    Montage m;
    for (int s : data_signals) m.channel_names.push_back(strip_label(labels[s]));
    m.positions.resize(m.channel_names.size());
    for (std::size_t i = 0; i < m.channel_names.size(); ++i) {
      auto p = standard_1020_position(m.channel_names[i]);
      m.positions[i] = p ? *p : spiral_position(i, m.channel_names.size());
    }
    for (const auto& e : {"Fp1", "Fp2", "AF7", "AF8"})
      if (m.index_of(e)) m.eye_proxy_channels.push_back(e);
    r.montage = std::move(m);
  }
  return r;
}

}  // namespace mindrace
