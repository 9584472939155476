#pragma once

namespace mmc {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace mmc
