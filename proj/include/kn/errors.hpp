#pragma once

#include <stdexcept>
#include <string>

namespace kn {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input expression (CLI exit code 2).
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

// Input violates a model-layer contract, e.g. no finite type or a
// non-normalizable model (CLI exit code 3).
struct ContractError : Error {
    using Error::Error;
};

// Numeric machinery failed to converge or detected an internal
// inconsistency (CLI exit code 4).
struct NumericError : Error {
    using Error::Error;
};

}  // namespace kn
