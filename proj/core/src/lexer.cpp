#include "braid/lexer.hpp"

#include <cctype>
#include <map>

#include "braid/errors.hpp"

namespace braid {

const char* token_name(Tok k) {
    switch (k) {
        case Tok::Ident: return "identifier";
        case Tok::ConsName: return "constructor";
        case Tok::Number: return "number";
        case Tok::String: return "string";
        case Tok::KwLet: return "let";
        case Tok::KwIn: return "in";
        case Tok::KwWhere: return "where";
        case Tok::KwIf: return "if";
        case Tok::KwThen: return "then";
        case Tok::KwElse: return "else";
        case Tok::KwCase: return "case";
        case Tok::KwOf: return "of";
        case Tok::KwEnd: return "end";
        case Tok::KwOpen: return "open";
        case Tok::KwMeth: return "meth";
        case Tok::KwUnion: return "union";
        case Tok::KwEps: return "eps";
        case Tok::KwNull: return "null";
        case Tok::Lambda: return "\\";
        case Tok::Dot: return ".";
        case Tok::LParen: return "(";
        case Tok::RParen: return ")";
        case Tok::LBrack: return "[";
        case Tok::RBrack: return "]";
        case Tok::Comma: return ",";
        case Tok::Semi: return ";";
        case Tok::SemiSemi: return ";;";
        case Tok::EmptyEnv: return "{}";
        case Tok::EmptySet: return "{||}";
        case Tok::Bar: return "|";
        case Tok::MapsTo: return "|->";
        case Tok::Amp: return "&";
        case Tok::At: return "@";
        case Tok::Assign: return ":=";
        case Tok::Cons: return "::";
        case Tok::Append: return "++";
        case Tok::SetDiff: return "\\\\";
        case Tok::Bang: return "!";
        case Tok::FatArrow: return "=>";
        case Tok::Eq: return "=";
        case Tok::Neq: return "<>";
        case Tok::Lt: return "<";
        case Tok::Le: return "<=";
        case Tok::Gt: return ">";
        case Tok::Ge: return ">=";
        case Tok::Plus: return "+";
        case Tok::Minus: return "-";
        case Tok::Star: return "*";
        case Tok::Slash: return "/";
        case Tok::Wild: return "_";
        case Tok::Eof: return "end of input";
    }
    return "?";
}

namespace {

const std::map<std::string, Tok, std::less<>> kKeywords = {
    {"let", Tok::KwLet},   {"in", Tok::KwIn},     {"where", Tok::KwWhere},
    {"if", Tok::KwIf},     {"then", Tok::KwThen}, {"else", Tok::KwElse},
    {"case", Tok::KwCase}, {"of", Tok::KwOf},     {"end", Tok::KwEnd},
    {"open", Tok::KwOpen}, {"meth", Tok::KwMeth}, {"union", Tok::KwUnion},
    {"eps", Tok::KwEps},   {"null", Tok::KwNull},
};

struct Cursor {
    std::string_view src;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    bool done() const { return pos >= src.size(); }
    char peek(std::size_t off = 0) const {
        return pos + off < src.size() ? src[pos + off] : '\0';
    }
    char take() {
        char c = src[pos++];
        if (c == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
        return c;
    }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_cont(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

} // namespace

std::vector<Token> lex(std::string_view source) {
    Cursor cur{source};
    std::vector<Token> out;

    auto push = [&](Tok k, std::string text, int line, int col) {
        Token t;
        t.kind = k;
        t.text = std::move(text);
        t.line = line;
        t.col = col;
        out.push_back(std::move(t));
    };

    while (!cur.done()) {
        char c = cur.peek();
        int line = cur.line, col = cur.col;

        if (std::isspace(static_cast<unsigned char>(c))) {
            cur.take();
            continue;
        }
        // comment to end of line
        if (c == '-' && cur.peek(1) == '-') {
            while (!cur.done() && cur.peek() != '\n') cur.take();
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
                digits += cur.take();
            Token t;
            t.kind = Tok::Number;
            t.text = digits;
            t.number = std::stoll(digits);
            t.line = line;
            t.col = col;
            out.push_back(std::move(t));
            continue;
        }
        if (ident_start(c)) {
            std::string name;
            while (!cur.done() && ident_cont(cur.peek())) name += cur.take();
            if (name == "_") {
                push(Tok::Wild, name, line, col);
            } else if (auto it = kKeywords.find(name); it != kKeywords.end()) {
                push(it->second, name, line, col);
            } else if (std::isupper(static_cast<unsigned char>(name[0]))) {
                push(Tok::ConsName, name, line, col);
            } else {
                push(Tok::Ident, name, line, col);
            }
            continue;
        }
        if (c == '"') {
            cur.take();
            std::string s;
            bool closed = false;
            while (!cur.done()) {
                char d = cur.take();
                if (d == '"') {
                    closed = true;
                    break;
                }
                if (d == '\\') {
                    if (cur.done())
                        throw ParseError("unterminated escape in string literal", cur.line, cur.col);
                    char e = cur.take();
                    if (e == '"') s += '"';
                    else if (e == '\\') s += '\\';
                    else
                        throw ParseError(std::string("unsupported escape '\\") + e +
                                             "' in string literal (only \\\" and \\\\)",
                                         cur.line, cur.col);
                } else if (d == '\n') {
                    throw ParseError("unterminated string literal", line, col);
                } else {
                    s += d;
                }
            }
            if (!closed) throw ParseError("unterminated string literal", line, col);
            push(Tok::String, s, line, col);
            continue;
        }

        auto two = [&](char a, char b) { return c == a && cur.peek(1) == b; };
        if (two('{', '}')) { cur.take(); cur.take(); push(Tok::EmptyEnv, "{}", line, col); continue; }
        if (c == '{' && cur.peek(1) == '|' && cur.peek(2) == '|' && cur.peek(3) == '}') {
            cur.take(); cur.take(); cur.take(); cur.take();
            push(Tok::EmptySet, "{||}", line, col);
            continue;
        }
        if (c == '{')
            throw ParseError("unexpected '{' (only '{}' and '{||}' literals exist)", line, col);
        if (c == '|' && cur.peek(1) == '-' && cur.peek(2) == '>') {
            cur.take(); cur.take(); cur.take();
            push(Tok::MapsTo, "|->", line, col);
            continue;
        }
        if (two(';', ';')) { cur.take(); cur.take(); push(Tok::SemiSemi, ";;", line, col); continue; }
        if (two(':', ':')) { cur.take(); cur.take(); push(Tok::Cons, "::", line, col); continue; }
        if (two(':', '=')) { cur.take(); cur.take(); push(Tok::Assign, ":=", line, col); continue; }
        if (two('+', '+')) { cur.take(); cur.take(); push(Tok::Append, "++", line, col); continue; }
        if (two('\\', '\\')) { cur.take(); cur.take(); push(Tok::SetDiff, "\\\\", line, col); continue; }
        if (two('=', '>')) { cur.take(); cur.take(); push(Tok::FatArrow, "=>", line, col); continue; }
        if (two('<', '>')) { cur.take(); cur.take(); push(Tok::Neq, "<>", line, col); continue; }
        if (two('<', '=')) { cur.take(); cur.take(); push(Tok::Le, "<=", line, col); continue; }
        if (two('>', '=')) { cur.take(); cur.take(); push(Tok::Ge, ">=", line, col); continue; }

        cur.take();
        switch (c) {
            case '\\': push(Tok::Lambda, "\\", line, col); break;
            case '.': push(Tok::Dot, ".", line, col); break;
            case '(': push(Tok::LParen, "(", line, col); break;
            case ')': push(Tok::RParen, ")", line, col); break;
            case '[': push(Tok::LBrack, "[", line, col); break;
            case ']': push(Tok::RBrack, "]", line, col); break;
            case ',': push(Tok::Comma, ",", line, col); break;
            case ';': push(Tok::Semi, ";", line, col); break;
            case '|': push(Tok::Bar, "|", line, col); break;
            case '&': push(Tok::Amp, "&", line, col); break;
            case '@': push(Tok::At, "@", line, col); break;
            case '!': push(Tok::Bang, "!", line, col); break;
            case '=': push(Tok::Eq, "=", line, col); break;
            case '<': push(Tok::Lt, "<", line, col); break;
            case '>': push(Tok::Gt, ">", line, col); break;
            case '+': push(Tok::Plus, "+", line, col); break;
            case '-': push(Tok::Minus, "-", line, col); break;
            case '*': push(Tok::Star, "*", line, col); break;
            case '/': push(Tok::Slash, "/", line, col); break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }

    Token eof;
    eof.kind = Tok::Eof;
    eof.text = "";
    eof.line = cur.line;
    eof.col = cur.col;
    out.push_back(std::move(eof));
    return out;
}

} // namespace braid
