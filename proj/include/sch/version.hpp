#pragma once

namespace sch {

inline constexpr const char* kVersion = "0.1.0";

} // namespace sch
