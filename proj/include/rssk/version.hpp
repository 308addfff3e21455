#pragma once

namespace rssk {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace rssk
