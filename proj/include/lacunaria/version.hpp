#pragma once

namespace lac {

inline constexpr const char* kVersion = "lacunaria 0.1.0";

}  // namespace lac
