#pragma once

namespace bimasim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bimasim
