#pragma once

namespace schurmix {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace schurmix
