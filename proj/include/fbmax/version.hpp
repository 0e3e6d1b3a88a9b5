#pragma once

namespace fbmax {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fbmax
