#pragma once

namespace scrub {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace scrub
