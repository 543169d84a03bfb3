#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace levelset {

/// Base class for every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad rational, zero atom, misaligned lengths, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An enumeration bound was exceeded. Carries the requested size and the bound.
class ResourceLimit : public Error {
 public:
  ResourceLimit(const std::string& what, std::size_t requested, std::size_t limit)
      : Error(what + ": n = " + std::to_string(requested) + " exceeds limit " +
              std::to_string(limit)),
        requested_(requested),
        limit_(limit) {}

  std::size_t requested() const noexcept { return requested_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t requested_;
  std::size_t limit_;
};

/// The supplied masses cannot reach the requested target.
class InsufficientMass : public Error {
 public:
  using Error::Error;
};

}  // namespace levelset
