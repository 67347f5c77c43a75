#pragma once

namespace mixinglab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mixinglab
