#pragma once

namespace singlab {
inline constexpr const char* kVersion = "0.1.0";
}
