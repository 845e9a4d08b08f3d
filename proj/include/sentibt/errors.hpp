#pragma once

#include <stdexcept>
#include <string>

namespace sentibt {

/// Base class for all engine errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad command line or configuration (CLI exit code 1).
struct UsageError : Error {
    using Error::Error;
};

/// Malformed or inconsistent input data (CLI exit code 2).
struct DataError : Error {
    using Error::Error;
};

/// Violated numeric precondition or undefined computation (CLI exit code 3).
struct ComputeError : Error {
    using Error::Error;
};

/// DataError pointing at a specific line of an input file.
[[noreturn]] inline void throw_parse_error(const std::string& origin, std::size_t line,
                                           const std::string& what) {
    throw DataError(origin + ":" + std::to_string(line) + ": " + what);
}

}  // namespace sentibt
