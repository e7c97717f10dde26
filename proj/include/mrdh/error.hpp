#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrdh {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mesh violates the triangular-mesh invariants (index range, degenerate faces, counts).
class InvalidMesh : public Error {
 public:
  using Error::Error;
};

enum class ParseErrorKind {
  kMalformedHeader,
  kNonTriangularFace,
  kIndexOutOfRange,
  kNonNumeric,
  kUnsupported,
  kDegenerateFace,
  kCountMismatch,
};

const char* to_string(ParseErrorKind kind);

/// Text mesh parse failure. `line()` is 1-based; 0 when the problem is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

/// Binary container is not readable (bad magic, version, truncation, inconsistent lengths).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A value does not fit the l-bit coordinate encoding, or a precision is out of range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Compressed label stream is corrupt or does not match the declared count.
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Payload does not fit the net embedding capacity.
class CapacityError : public Error {
 public:
  CapacityError(std::size_t requested_bits, std::size_t max_bytes);

  std::size_t requested_bits() const { return requested_bits_; }
  std::size_t max_bytes() const { return max_bytes_; }

 private:
  std::size_t requested_bits_;
  std::size_t max_bytes_;
};

}  // namespace mrdh
