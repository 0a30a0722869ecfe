#pragma once

namespace pqdist {
inline constexpr const char* kVersion = "0.1.0";
}  // namespace pqdist
