#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace zipfpoisson::detail {

/// Shortest decimal form that parses back to exactly the same double.
/// Every CSV number goes through here so repeat runs are byte-identical.
inline std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

inline std::string format_int(std::int64_t value) {
  char buf[24];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace zipfpoisson::detail
