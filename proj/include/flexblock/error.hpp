#pragma once

#include <stdexcept>
#include <string>

namespace flexblock {

/// Machine-readable failure categories used across the library.
enum class Err {
    BalanceViolation,
    SocOutOfRange,
    IndexOutOfRange,
    LengthMismatch,
    DivisionByZero,
    ParseError,
    ValidationError,
    MissingUnit,
    DuplicateUnit,
    DimensionMismatch,
    SolverFailure,
    IoError,
};

const char* err_name(Err code);

/// All library failures throw this; code() distinguishes them programmatically.
class FlexError : public std::runtime_error {
  public:
    FlexError(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

    Err code() const { return code_; }

  private:
    Err code_;
};

}  // namespace flexblock
