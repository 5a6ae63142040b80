#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace braid {

enum class Tok {
    Ident,      // lowercase-leading identifier
    ConsName,   // uppercase-leading identifier (constructor)
    Number,
    String,
    // keywords
    KwLet, KwIn, KwWhere, KwIf, KwThen, KwElse, KwCase, KwOf, KwEnd, KwOpen, KwMeth,
    KwUnion, KwEps, KwNull,
    // punctuation / operators
    Lambda,     // '\'
    Dot,        // '.'
    LParen, RParen, LBrack, RBrack,
    Comma, Semi, SemiSemi,
    EmptyEnv,   // '{}'
    EmptySet,   // '{||}'
    Bar,        // '|'
    MapsTo,     // '|->'
    Amp,        // '&'
    At,         // '@'
    Assign,     // ':='
    Cons,       // '::'
    Append,     // '++'
    SetDiff,    // '\\'
    Bang,       // '!'
    FatArrow,   // '=>'
    Eq,         // '='
    Neq,        // '<>'
    Lt, Le, Gt, Ge,
    Plus, Minus, Star, Slash,
    Wild,       // '_'
    Eof,
};

struct Token {
    Tok kind;
    std::string text;
    std::int64_t number = 0;
    int line = 1;
    int col = 1;
};

const char* token_name(Tok k);

// Tokenizes the whole input. `--` starts a comment running to end of line.
std::vector<Token> lex(std::string_view source);

} // namespace braid
