#pragma once

namespace wulffsym {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wulffsym
