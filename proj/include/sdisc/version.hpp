#pragma once

namespace sdisc {
inline constexpr const char* kVersion = "0.1.0";
}
