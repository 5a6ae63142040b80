#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace braid {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by the lexer/parser. Carries the first-error position and the token
// set that would have allowed the parse to continue.
struct ParseError : Error {
    ParseError(std::string msg, int line, int col, std::vector<std::string> expected = {})
        : Error(std::move(msg)), line(line), col(col), expected(std::move(expected)) {}
    int line;
    int col;
    std::vector<std::string> expected;
};

struct DesugarError : Error {
    using Error::Error;
};

// Any failure during evaluation: unbound identifiers, applying non-functions,
// primitive shape errors, depth-guard trips, braid dispatch errors.
struct RuntimeError : Error {
    using Error::Error;
};

// Internal consistency check failed while constructing an initial class
// configuration. Always a bug signal, never a user error.
struct BootstrapError : Error {
    using Error::Error;
};

} // namespace braid
