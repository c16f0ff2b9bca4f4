#pragma once

namespace risce {
inline constexpr const char* kVersion = "0.1.0";
}
