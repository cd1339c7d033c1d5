#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace covkit {

// Domain-level failures map to CLI exit code 1.  Input/usage failures
// (ParseError, UnsupportedVersion) map to exit code 2.
enum class Errc {
  InvalidInput,
  DomainMismatch,
  EndpointMismatch,
  UnknownVertex,
  BadIndexSet,
  BadLevel,
  DecompositionFailure,
  NotProperlyOrdered,
  InvalidPath,
  UnknownCircuit,
  WindowTooWide,
  WindowExceedsSymbol,
  ShapeMismatch,
};

const char* errc_name(Errc code);

class DomainError : public std::runtime_error {
 public:
  DomainError(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t byte_offset, const std::string& what)
      : std::runtime_error("parse error at byte " + std::to_string(byte_offset) +
                           ": " + what),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

class UnsupportedVersion : public std::runtime_error {
 public:
  explicit UnsupportedVersion(int version)
      : std::runtime_error("unsupported format_version " + std::to_string(version)),
        version_(version) {}

  int version() const { return version_; }

 private:
  int version_;
};

}  // namespace covkit
