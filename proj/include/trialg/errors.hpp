#pragma once

#include <stdexcept>
#include <string>

namespace trialg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// abelian
struct RankDeficientError : Error { using Error::Error; };
struct LengthMismatchError : Error { using Error::Error; };
struct GroupMismatchError : Error { using Error::Error; };

// derivation
struct BetaSumNonzeroError : Error { using Error::Error; };
struct BetaCaseInvalidError : Error { using Error::Error; };
struct ExponentConditionError : Error { using Error::Error; };
struct IndexOutOfRangeError : Error { using Error::Error; };
struct SupportViolationError : Error { using Error::Error; };
struct ZeroDerivationError : Error { using Error::Error; };
struct InvalidKernelShapeError : Error { using Error::Error; };

// roots
struct InvalidWitnessError : Error { using Error::Error; };
struct EmptyBoxError : Error { using Error::Error; };

// oracle
struct CapTooSmallError : Error { using Error::Error; };

// io
struct SyntaxError : Error {
    SyntaxError(const std::string& what, int line, int column)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) +
                ": " + what),
          line(line),
          column(column) {}
    int line;
    int column;
};

struct SemanticError : Error { using Error::Error; };

}  // namespace trialg
