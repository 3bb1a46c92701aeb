#pragma once

namespace dlogdist {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dlogdist
