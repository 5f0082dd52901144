#pragma once

#include <stdexcept>
#include <string>

namespace hyperred {

enum class ErrorKind {
    InvalidInput,
    PrecisionExhausted,
    RepeatedRoot,
    NotCoprime,
    NotUnimodular,
    NotSplit,
    BadFlag,
    InsufficientPrecision,
    NoSplit,
    InvalidTriple,
    NotStable,
    FilterNotSatisfied,
    NotApplicable,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// 2 for precision faults, 3 for everything the caller got wrong.
int exit_code_for(ErrorKind k);

} // namespace hyperred
