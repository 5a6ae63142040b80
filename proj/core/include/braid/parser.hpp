#pragma once

#include <string_view>

#include "braid/ast.hpp"

namespace braid {

// Parses a whole source file: a sequence of `let` declaration groups and
// expressions. Expression items are terminated by `;;` (optional before a
// following `let` or end of input).
SProgram parse_program(std::string_view text);

// Parses a single expression (REPL entry point).
SExprPtr parse_expr(std::string_view text);

// Parses one REPL line: either a declaration group or an expression.
SItem parse_repl_item(std::string_view text);

} // namespace braid
