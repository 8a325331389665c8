#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace mindrace {

// Shared on-disk framing: 4-byte magic, little-endian u32 header length,
// UTF-8 JSON header, raw little-endian payload.
struct FramedFile {
  nlohmann::json header;
  std::vector<std::byte> payload;
};

void write_framed(const std::string& path, const std::string& magic,
                  const nlohmann::json& header, const void* payload,
                  std::size_t payload_bytes);

// Throws std::runtime_error on bad magic ("not a ... file") or truncation.
FramedFile read_framed(const std::string& path, const std::string& magic,
                       const std::string& kind);

// little-endian scalar append/read helpers
void append_f32(std::vector<std::byte>& out, float v);
void append_f64(std::vector<std::byte>& out, double v);
void append_i16(std::vector<std::byte>& out, std::int16_t v);

}  // namespace mindrace
