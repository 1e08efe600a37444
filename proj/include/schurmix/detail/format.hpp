#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace schurmix::detail {

// Shortest decimal that round-trips to the same double.
inline std::string fmt(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

inline std::string fmt(std::uint64_t x) { return std::to_string(x); }
inline std::string fmt(int x) { return std::to_string(x); }

}  // namespace schurmix::detail
