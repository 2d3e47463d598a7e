#pragma once

namespace tregsim {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace tregsim
