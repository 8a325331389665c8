#pragma once

#include <string>

#include "mindrace/types.hpp"

namespace mindrace {

// Native recording container ("MRC1"): framed JSON header + channel-major
// little-endian sample payload. float32 encoding round-trips bit-exact;
// int16 uses a per-channel linear map and round-trips within one
// quantization step.
enum class SampleEncoding { f32, i16 };

void write_container(const Recording& r, const std::string& path,
                     SampleEncoding enc = SampleEncoding::f32);
Recording read_container(const std::string& path);

}  // namespace mindrace
