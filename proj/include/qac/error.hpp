#pragma once

#include <stdexcept>
#include <string>

namespace qac {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad parameters: duplicate labels, width mismatches, out-of-range constants.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

/// Problem too large for the requested operation (e.g. exhaustive limit).
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(what) {}
};

/// A decoded state violates a structural invariant (non-permutation mapping,
/// multiple span flags, ...). Signals non-ground or inconsistent input.
class InconsistentState : public Error {
 public:
  explicit InconsistentState(const std::string& what) : Error(what) {}
};

/// File read/write/parse failure.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace qac
