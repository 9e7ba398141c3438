#pragma once

namespace belt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace belt
