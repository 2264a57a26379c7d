#pragma once

namespace spinloc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace spinloc
