#pragma once

#include <stdexcept>
#include <string>

namespace surfmmp {

enum class ErrorKind {
  DimensionMismatch,
  Singular,
  NotContractible,
  InconsistentIncidence,
  NoZariskiDecomposition,
  NotRedundant,
  UnknownName,
  InvariantViolation,
  Parse,
};

const char* to_string(ErrorKind kind);

class SurfaceError : public std::runtime_error {
 public:
  SurfaceError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace surfmmp
