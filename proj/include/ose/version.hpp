#pragma once

namespace ose {

inline constexpr const char* kVersion = "1.0.0";

} // namespace ose
