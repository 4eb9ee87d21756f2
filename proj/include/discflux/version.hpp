#pragma once

namespace discflux {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace discflux
