#pragma once

namespace opk {

/// Library version; cached structures are invalidated when it changes.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace opk
