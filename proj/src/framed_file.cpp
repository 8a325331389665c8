#include "mindrace/framed_file.hpp"

#include <cstring>
#include <stdexcept>

namespace mindrace {

namespace {

void put_u32le(std::ofstream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

}  // namespace

void write_framed(const std::string& path, const std::string& magic,
                  const nlohmann::json& header, const void* payload,
                  std::size_t payload_bytes) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os.write(magic.data(), 4);
  const std::string h = header.dump();
  put_u32le(os, static_cast<std::uint32_t>(h.size()));
  os.write(h.data(), static_cast<std::streamsize>(h.size()));
  if (payload_bytes)
    os.write(reinterpret_cast<const char*>(payload),
             static_cast<std::streamsize>(payload_bytes));
  if (!os) throw std::runtime_error("write failed: " + path);
}

FramedFile read_framed(const std::string& path, const std::string& magic,
                       const std::string& kind) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  char m[4];
  if (!is.read(m, 4) || std::memcmp(m, magic.data(), 4) != 0)
    throw std::runtime_error("not a " + kind + " file: " + path);
  unsigned char lb[4];
  if (!is.read(reinterpret_cast<char*>(lb), 4))
    throw std::runtime_error("corrupt " + kind + ": " + path);
  const std::uint32_t hlen = static_cast<std::uint32_t>(lb[0]) |
                             (static_cast<std::uint32_t>(lb[1]) << 8) |
                             (static_cast<std::uint32_t>(lb[2]) << 16) |
                             (static_cast<std::uint32_t>(lb[3]) << 24);
  std::string h(hlen, '\0');
  if (!is.read(h.data(), hlen))
    throw std::runtime_error("corrupt " + kind + ": " + path);
  FramedFile f;
  try {
    f.header = nlohmann::json::parse(h);
  } catch (const nlohmann::json::exception&) {
    throw std::runtime_error("corrupt " + kind + ": bad header json: " + path);
  }
  std::vector<char> rest((std::istreambuf_iterator<char>(is)),
                         std::istreambuf_iterator<char>());
  f.payload.resize(rest.size());
  std::memcpy(f.payload.data(), rest.data(), rest.size());
  return f;
}

void append_f32(std::vector<std::byte>& out, float v) {
  std::byte b[4];
  std::memcpy(b, &v, 4);
  out.insert(out.end(), b, b + 4);
}

void append_f64(std::vector<std::byte>& out, double v) {
  std::byte b[8];
  std::memcpy(b, &v, 8);
  out.insert(out.end(), b, b + 8);
}

void append_i16(std::vector<std::byte>& out, std::int16_t v) {
  std::byte b[2];
  std::memcpy(b, &v, 2);
  out.insert(out.end(), b, b + 2);
}

}  // namespace mindrace
