#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyfact {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input text could not be parsed; position is a 0-based byte offset.
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct DimensionError : Error {
    using Error::Error;
};

// A polynomial does not fit into the requested bounded-degree space.
struct DegreeOverflow : Error {
    using Error::Error;
};

// Structure detection needs a hint for three or more variables.
struct UnsupportedArity : Error {
    using Error::Error;
};

struct FactorizationFailure : Error {
    using Error::Error;
};

}  // namespace polyfact
