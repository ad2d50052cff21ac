#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tiredge {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input data (PGM streams). Carries the byte offset of the defect.
struct ParseError : Error {
  std::size_t offset;
  ParseError(const std::string& msg, std::size_t at)
      : Error(msg + " (at byte " + std::to_string(at) + ")"), offset(at) {}
};

/// Invalid parameter or configuration value.
struct ConfigError : Error {
  using Error::Error;
};

/// Failure inside a processing stage; message carries the stage label.
struct ProcessError : Error {
  using Error::Error;
};

}  // namespace tiredge
