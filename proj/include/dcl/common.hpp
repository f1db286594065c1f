#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dcl {

// Exit-code contract used by the CLI: config/validation errors -> 2,
// IO errors -> 3, numerical failures -> 4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dcl
