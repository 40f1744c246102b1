#pragma once

#include <stdexcept>
#include <string>

namespace vilenkin {

enum class ErrorKind {
  invalid_spec,
  resolution_too_large,
  out_of_range,
  spec_mismatch,
  undefined_kernel,
  truncation_unsound,
  insufficient_resolution,
  invalid_argument,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_spec: return "invalid-spec";
    case ErrorKind::resolution_too_large: return "resolution-too-large";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::spec_mismatch: return "spec-mismatch";
    case ErrorKind::undefined_kernel: return "undefined-kernel";
    case ErrorKind::truncation_unsound: return "truncation-unsound";
    case ErrorKind::insufficient_resolution: return "insufficient-resolution";
    case ErrorKind::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vilenkin
