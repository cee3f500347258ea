#pragma once

namespace rbca {

inline constexpr const char* kVersionString = "0.1.0";

} // namespace rbca
