#pragma once

namespace agency {

inline constexpr const char* kToolName = "simulate";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace agency
