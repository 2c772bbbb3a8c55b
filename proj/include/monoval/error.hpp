// Exception hierarchy shared by all modules. The CLI maps these to exit codes.
#pragma once
#include <stdexcept>
#include <string>

namespace monoval {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// malformed input text
struct ParseError : Error {
    int line = 0, column = 0;
    ParseError(const std::string& msg, int l, int c)
        : Error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg), line(l), column(c) {}
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// mathematically invalid request (non-unit inverse, failed precondition, ...)
struct DomainError : Error {
    using Error::Error;
};

// result depends on terms beyond the available precision
struct PrecisionError : DomainError {
    using DomainError::DomainError;
};

struct Unsupported : DomainError {
    using DomainError::DomainError;
};

struct BudgetExhausted : Error {
    using Error::Error;
};

} // namespace monoval
