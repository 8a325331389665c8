#pragma once

// Hand-rolled minimal EDF/EDF+ writer used as an independent oracle for the
// parser tests. Writes 16-bit continuous files only.

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

struct EdfTestSignal {
  std::string label;
  std::string dimension = "uV";
  double phys_min = -1000.0;
  double phys_max = 1000.0;
  int dig_min = -32768;
  int dig_max = 32767;
  std::vector<std::int16_t> samples;  // concatenated over records
};

struct EdfTestAnnotation {
  double onset_s = 0.0;
  std::string label;
};

inline void write_edf_test_file(const std::string& path,
                                std::vector<EdfTestSignal> signals,
                                int samples_per_record, double record_s,
                                const std::vector<EdfTestAnnotation>& annotations,
                                int forced_records = -1) {
  const bool with_annot = !annotations.empty();
  const int ns = static_cast<int>(signals.size()) + (with_annot ? 1 : 0);
  int n_records = forced_records;
  if (n_records < 0) {
    n_records = 0;
    if (!signals.empty() && samples_per_record > 0)
      n_records = static_cast<int>(signals[0].samples.size()) / samples_per_record;
  }
  const int annot_spr = 32;  // 64 bytes per record for annotation text

  auto pad = [](std::string s, std::size_t n) {
    s.resize(n, ' ');
    return s;
  };
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  os << pad("0", 8) << pad("test patient", 80) << pad("test recording", 80)
     << pad("01.01.20", 8) << pad("00.00.00", 8)
     << pad(std::to_string(256 * (ns + 1)), 8)
     << pad(with_annot ? "EDF+C" : "", 44) << pad(std::to_string(n_records), 8)
     << pad(std::to_string(record_s), 8) << pad(std::to_string(ns), 4);

  auto per_signal = [&](auto field_of, std::size_t width) {
    for (const auto& s : signals) os << pad(field_of(s), width);
    if (with_annot) os << pad(field_of(EdfTestSignal{"EDF Annotations"}), width);
  };
  per_signal([](const EdfTestSignal& s) { return s.label; }, 16);
  per_signal([](const EdfTestSignal&) { return std::string("test"); }, 80);
  per_signal([](const EdfTestSignal& s) { return s.dimension; }, 8);
  per_signal([](const EdfTestSignal& s) { return std::to_string(s.phys_min); }, 8);
  per_signal([](const EdfTestSignal& s) { return std::to_string(s.phys_max); }, 8);
  per_signal([](const EdfTestSignal& s) { return std::to_string(s.dig_min); }, 8);
  per_signal([](const EdfTestSignal& s) { return std::to_string(s.dig_max); }, 8);
  per_signal([](const EdfTestSignal&) { return std::string(); }, 80);
  for (const auto& s : signals) {
    (void)s;
    os << pad(std::to_string(samples_per_record), 8);
  }
  if (with_annot) os << pad(std::to_string(annot_spr), 8);
  per_signal([](const EdfTestSignal&) { return std::string(); }, 32);

  std::size_t next_annotation = 0;
  for (int rec = 0; rec < n_records; ++rec) {
    for (const auto& s : signals) {
      for (int i = 0; i < samples_per_record; ++i) {
        const std::size_t idx = static_cast<std::size_t>(rec) * samples_per_record + i;
        const std::int16_t v = idx < s.samples.size() ? s.samples[idx] : 0;
        os.write(reinterpret_cast<const char*>(&v), 2);
      }
    }
    if (with_annot) {
      std::string tal = "+" + std::to_string(rec * record_s) + "\x14\x14";
      while (next_annotation < annotations.size()) {
        const auto& a = annotations[next_annotation];
        if (a.onset_s >= (rec + 1) * record_s && rec + 1 < n_records) break;
        tal += "+" + std::to_string(a.onset_s) + "\x14" + a.label + "\x14";
        ++next_annotation;
      }
      tal.resize(2 * annot_spr, '\0');
      os.write(tal.data(), 2 * annot_spr);
    }
  }
}
