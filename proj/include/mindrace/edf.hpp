#pragma once

#include <optional>
#include <string>

#include "mindrace/types.hpp"

namespace mindrace {

// EDF / EDF+ reader covering 16-bit continuous recordings with at most one
// "EDF Annotations" signal (the public motor-imagery dataset's layout).
// Signals are scaled to microvolts via the per-signal physical/digital linear
// map; EDF+ timestamped annotation lists become Events.
Recording read_edf(const std::string& path,
                   std::optional<Montage> montage_override = std::nullopt);

}  // namespace mindrace
