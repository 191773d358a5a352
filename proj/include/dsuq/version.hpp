#pragma once

namespace dsuq {

inline constexpr const char* kToolName = "dsuq";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace dsuq
