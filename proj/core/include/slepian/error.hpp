#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace slepian {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric parameter violates the documented precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An index (sequence number, radial order) is out of range.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain where the operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested angular orders do not fit on the angular grid (2L+1 > T).
class AliasingError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Malformed or truncated input file. Carries the byte offset of the failure.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), message_(what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }
  /// The description without the offset suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t offset_;
};

}  // namespace slepian
