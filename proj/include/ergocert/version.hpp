#pragma once

namespace ergocert {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ergocert
