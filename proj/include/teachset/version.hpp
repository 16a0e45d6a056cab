#pragma once

namespace teachset {

inline constexpr const char* kToolName = "teachset";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace teachset
