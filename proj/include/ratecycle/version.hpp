#pragma once

namespace ratecycle {

inline constexpr const char* version = "0.1.0";

}  // namespace ratecycle
