#pragma once

#include <stdexcept>
#include <string>

namespace graspgen {

/// Malformed or out-of-range configuration values.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Unreadable or malformed input files (meshes, clouds, JSON lines).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A documented data invariant does not hold (bad rotation, score out of
/// range, inconsistent record).
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace graspgen
