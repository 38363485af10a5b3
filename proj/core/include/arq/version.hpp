#pragma once

namespace arq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace arq
