#pragma once

#include <stdexcept>
#include <string>

namespace tcert {

enum class ErrorKind {
  InvalidArgument,
  InvalidTruncation,
  PoleNotCancelled,
  PrecisionInsufficient,
  Divergence,
  CannotCertify,
  Underdetermined,
  EnumerationTooLarge,
  IncreaseTruncation,
  InternalInvariant,
  Exhausted,
  Domain,
  InconsistentWitness,
  Precondition,
  Determination,
  Budget,
  Parse,
};

const char* to_string(ErrorKind kind) noexcept;

// All library failures are reported through this exception; the kind decides
// how callers (and the CLI exit code) react.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tcert
