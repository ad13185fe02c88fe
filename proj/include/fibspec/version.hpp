#pragma once

namespace fibspec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fibspec
