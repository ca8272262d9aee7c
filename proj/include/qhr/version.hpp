#pragma once

namespace qhr {

inline constexpr const char* version = "0.1.0";

}  // namespace qhr
