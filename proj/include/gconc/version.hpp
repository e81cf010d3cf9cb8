#pragma once

namespace gconc {

inline constexpr const char* kToolName = "gconc";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace gconc
