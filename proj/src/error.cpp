#include "flexblock/error.hpp"

namespace flexblock {

const char* err_name(Err code) {
    switch (code) {
        case Err::BalanceViolation: return "BalanceViolation";
        case Err::SocOutOfRange: return "SocOutOfRange";
        case Err::IndexOutOfRange: return "IndexOutOfRange";
        case Err::LengthMismatch: return "LengthMismatch";
        case Err::DivisionByZero: return "DivisionByZero";
        case Err::ParseError: return "ParseError";
        case Err::ValidationError: return "ValidationError";
        case Err::MissingUnit: return "MissingUnit";
        case Err::DuplicateUnit: return "DuplicateUnit";
        case Err::DimensionMismatch: return "DimensionMismatch";
        case Err::SolverFailure: return "SolverFailure";
        case Err::IoError: return "IoError";
    }
    return "UnknownError";
}

}  // namespace flexblock
