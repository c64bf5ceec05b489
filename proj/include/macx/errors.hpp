#pragma once

#include <stdexcept>
#include <string>

namespace macx {

/// Malformed or out-of-range input (CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured size cap was exceeded (CLI exit code 3).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Two independent computations disagreed, or an internal invariant broke
/// (CLI exit code 4).
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

/// Operation called without required state (e.g. no obstruction catalog).
class StateError : public std::runtime_error {
 public:
  explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace macx
