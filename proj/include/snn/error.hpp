#pragma once

#include <stdexcept>
#include <string>

namespace snn {

/// Raised when an exhaustive search would exceed its configured size limit.
class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A file could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file (instance JSON, PPM header, ...).
class ParseError : public IoError {
 public:
  explicit ParseError(const std::string& what) : IoError(what) {}
};

}  // namespace snn
