#include "braid/parser.hpp"

#include <initializer_list>

#include "braid/errors.hpp"
#include "braid/lexer.hpp"

namespace braid {

namespace {

SExprPtr mk(SExprVariant v, int line = 0, int col = 0) {
    auto e = std::make_shared<SExpr>();
    e->v = std::move(v);
    e->line = line;
    e->col = col;
    return e;
}

PatternPtr mkp(PatternVariant v) {
    auto p = std::make_shared<Pattern>();
    p->v = std::move(v);
    return p;
}

// Binary operator tiers, loosest first. `;` and `:=` are handled separately;
// so is application.
struct OpLevel {
    std::initializer_list<Tok> ops;
    bool right_assoc;
};
const OpLevel kLevels[] = {
    {{Tok::Eq, Tok::Neq, Tok::Lt, Tok::Le, Tok::Gt, Tok::Ge}, false},
    {{Tok::Amp}, false},
    {{Tok::MapsTo}, true},
    {{Tok::Append, Tok::KwUnion, Tok::SetDiff}, false},
    {{Tok::Cons}, true},
    {{Tok::Plus, Tok::Minus}, false},
    {{Tok::Star, Tok::Slash}, false},
    {{Tok::At}, false},
    {{Tok::Bang}, false},
};
constexpr int kNumLevels = 9;

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    SProgram program() {
        SProgram p;
        while (true) {
            while (at(Tok::SemiSemi)) take();
            if (at(Tok::Eof)) break;
            if (at(Tok::KwLet)) {
                take();
                auto decls = decl_group();
                if (at(Tok::KwIn)) {
                    // actually a let-expression item
                    take();
                    auto body = expr_core();
                    auto e = mk(ELet{std::move(decls), body});
                    p.items.push_back(ExprItem{e});
                    expect_item_end();
                } else {
                    p.items.push_back(DeclGroupItem{std::move(decls)});
                    expect_item_end();
                }
            } else {
                auto e = expr_core();
                p.items.push_back(ExprItem{e});
                expect_item_end();
            }
        }
        return p;
    }

    SExprPtr single_expr() {
        auto e = expr_core();
        while (at(Tok::SemiSemi)) take();
        expect(Tok::Eof);
        return e;
    }

    SItem repl_item() {
        SItem item{ExprItem{nullptr}};
        if (at(Tok::KwLet)) {
            take();
            auto decls = decl_group();
            if (at(Tok::KwIn)) {
                take();
                auto body = expr_core();
                item = ExprItem{mk(ELet{std::move(decls), body})};
            } else {
                item = DeclGroupItem{std::move(decls)};
            }
        } else {
            item = ExprItem{expr_core()};
        }
        while (at(Tok::SemiSemi)) take();
        expect(Tok::Eof);
        return item;
    }

private:
    // ---- token plumbing ----------------------------------------------------
    const Token& peek(std::size_t off = 0) const {
        std::size_t i = pos_ + off;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at(Tok k) const { return peek().kind == k; }
    const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    const Token& expect(Tok k) {
        if (!at(k)) fail({token_name(k)});
        return take();
    }
    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        std::string msg = "parse error at line " + std::to_string(t.line) + ", column " +
                          std::to_string(t.col) + ": unexpected " + describe(t);
        if (!expected.empty()) {
            msg += "; expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) msg += i + 1 == expected.size() ? " or " : ", ";
                msg += expected[i];
            }
        }
        throw ParseError(msg, t.line, t.col, std::move(expected));
    }
    static std::string describe(const Token& t) {
        if (t.kind == Tok::Eof) return "end of input";
        return "'" + t.text + "'";
    }

    void expect_item_end() {
        if (at(Tok::SemiSemi)) {
            take();
        } else if (!at(Tok::KwLet) && !at(Tok::Eof)) {
            fail({";;"});
        }
    }

    static bool head_form(Tok k) {
        return k == Tok::Lambda || k == Tok::KwIf || k == Tok::KwCase || k == Tok::KwOpen ||
               k == Tok::KwLet;
    }
    static bool atom_start(Tok k) {
        switch (k) {
            case Tok::Ident:
            case Tok::ConsName:
            case Tok::Number:
            case Tok::String:
            case Tok::KwEps:
            case Tok::KwNull:
            case Tok::LParen:
            case Tok::LBrack:
            case Tok::EmptyEnv:
            case Tok::EmptySet:
                return true;
            default:
                return false;
        }
    }

    // ---- expressions ---------------------------------------------------------
    // Sequencing plus trailing `where` groups; the entry point for every
    // bracketed or clause position.
    SExprPtr expr_core() {
        SExprPtr e;
        if (head_form(peek().kind)) {
            e = head();
        } else {
            e = seq();
        }
        while (at(Tok::KwWhere)) {
            take();
            auto decls = decl_group();
            e = mk(EWhere{e, std::move(decls)});
        }
        return e;
    }

    SExprPtr seq() {
        auto l = assign();
        while (at(Tok::Semi)) {
            take();
            SExprPtr r;
            if (head_form(peek().kind)) {
                r = head();
                l = mk(ESeq{l, r});
                break;
            }
            r = assign();
            l = mk(ESeq{l, r});
        }
        return l;
    }

    SExprPtr assign() {
        if (head_form(peek().kind)) return head();
        auto l = binary(0);
        if (at(Tok::Assign)) {
            int line = peek().line, col = peek().col;
            take();
            auto r = assign();
            return mk(EInfix{":=", l, r}, line, col);
        }
        return l;
    }

    SExprPtr binary(int level) {
        if (level >= kNumLevels) return application();
        if (head_form(peek().kind)) return head();
        auto matches = [&](Tok k) {
            for (Tok t : kLevels[level].ops)
                if (t == k) return true;
            return false;
        };
        auto l = binary(level + 1);
        if (kLevels[level].right_assoc) {
            if (matches(peek().kind)) {
                std::string op = token_name(peek().kind);
                take();
                auto r = head_form(peek().kind) ? head() : binary(level);
                return mk(EInfix{op, l, r});
            }
            return l;
        }
        while (matches(peek().kind)) {
            std::string op = token_name(peek().kind);
            take();
            if (head_form(peek().kind)) {
                l = mk(EInfix{op, l, head()});
                break;
            }
            auto r = binary(level + 1);
            l = mk(EInfix{op, l, r});
        }
        return l;
    }

    SExprPtr application() {
        auto l = atom();
        while (atom_start(peek().kind)) {
            auto r = atom();
            l = mk(EApp{l, r});
        }
        return l;
    }

    SExprPtr atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Ident:
            case Tok::ConsName: {
                take();
                return mk(EIdent{t.text}, t.line, t.col);
            }
            case Tok::Number: {
                take();
                return mk(ENum{t.number}, t.line, t.col);
            }
            case Tok::String: {
                take();
                return mk(EStr{t.text}, t.line, t.col);
            }
            case Tok::KwEps:
                take();
                return mk(EEps{}, t.line, t.col);
            case Tok::KwNull:
                take();
                return mk(ENull{}, t.line, t.col);
            case Tok::EmptyEnv:
                take();
                return mk(EEmptyEnv{}, t.line, t.col);
            case Tok::EmptySet:
                take();
                return mk(EEmptySet{}, t.line, t.col);
            case Tok::LParen: {
                take();
                if (at(Tok::RParen)) {
                    take();
                    return mk(EUnit{}, t.line, t.col);
                }
                auto first = expr_core();
                if (at(Tok::Comma)) {
                    std::vector<SExprPtr> elems{first};
                    while (at(Tok::Comma)) {
                        take();
                        elems.push_back(expr_core());
                    }
                    expect(Tok::RParen);
                    return mk(ETuple{std::move(elems)}, t.line, t.col);
                }
                expect(Tok::RParen);
                return first;  // grouping, not a 1-tuple
            }
            case Tok::LBrack: {
                take();
                std::vector<SExprPtr> elems;
                if (!at(Tok::RBrack)) {
                    elems.push_back(expr_core());
                    while (at(Tok::Comma)) {
                        take();
                        elems.push_back(expr_core());
                    }
                }
                expect(Tok::RBrack);
                return mk(EList{std::move(elems)}, t.line, t.col);
            }
            default:
                fail({"an expression"});
        }
    }

    // Lambda, conditional, case, open and let-in all extend maximally right.
    SExprPtr head() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Lambda: {
                take();
                std::vector<PatternPtr> params;
                params.push_back(pattern());
                while (!at(Tok::Dot)) params.push_back(pattern());
                take();  // '.'
                auto body = expr_core();
                return mk(ELam{std::move(params), body}, t.line, t.col);
            }
            case Tok::KwIf: {
                take();
                auto c = expr_core();
                expect(Tok::KwThen);
                auto th = expr_core();
                expect(Tok::KwElse);
                auto el = expr_core();
                return mk(EIf{c, th, el}, t.line, t.col);
            }
            case Tok::KwCase: {
                take();
                auto scrut = expr_core();
                expect(Tok::KwOf);
                std::vector<CaseArm> arms;
                ++case_depth_;
                arms.push_back(arm());
                while (at(Tok::Bar)) {
                    take();
                    arms.push_back(arm());
                }
                --case_depth_;
                expect(Tok::KwEnd);
                return mk(ECase{scrut, std::move(arms)}, t.line, t.col);
            }
            case Tok::KwOpen: {
                take();
                auto e1 = expr_core();
                expect(Tok::KwIn);
                auto e2 = expr_core();
                return mk(EOpen{e1, e2}, t.line, t.col);
            }
            case Tok::KwLet: {
                take();
                auto decls = decl_group();
                expect(Tok::KwIn);
                auto body = expr_core();
                return mk(ELet{std::move(decls), body}, t.line, t.col);
            }
            default:
                fail({"an expression"});
        }
    }

    CaseArm arm() {
        auto p = pattern();
        expect(Tok::FatArrow);
        auto body = expr_core();
        return CaseArm{p, body};
    }

    // ---- patterns -------------------------------------------------------------
    PatternPtr pattern() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Ident:
                take();
                return mkp(PIdent{t.text});
            case Tok::Wild:
                take();
                return mkp(PWild{});
            case Tok::Number:
                take();
                return mkp(PNum{t.number});
            case Tok::String:
                take();
                return mkp(PStr{t.text});
            case Tok::ConsName: {
                take();
                auto inner = pattern();
                return mkp(PCons{t.text, inner});
            }
            case Tok::LParen: {
                take();
                if (at(Tok::RParen)) {
                    take();
                    return mkp(PTuple{});
                }
                auto first = pattern();
                if (at(Tok::Comma)) {
                    std::vector<PatternPtr> elems{first};
                    while (at(Tok::Comma)) {
                        take();
                        elems.push_back(pattern());
                    }
                    expect(Tok::RParen);
                    return mkp(PTuple{std::move(elems)});
                }
                expect(Tok::RParen);
                return first;  // grouping
            }
            default:
                fail({"a pattern"});
        }
    }

    // ---- declarations -----------------------------------------------------------
    std::vector<Declaration> decl_group() {
        std::vector<Declaration> decls;
        decls.push_back(declaration());
        while (at(Tok::Comma)) {
            take();
            decls.push_back(declaration());
        }
        return decls;
    }

    Declaration declaration() {
        bool meth = false;
        if (at(Tok::KwMeth)) {
            take();
            meth = true;
        }
        const Token& name_tok = expect(Tok::Ident);
        std::string name = name_tok.text;
        if (!meth && at(Tok::Eq)) {
            take();
            auto value = expr_core();
            return SimpleDecl{name, value};
        }
        FnDecl fd;
        fd.name = name;
        fd.clauses.push_back(clause_tail(name, meth));
        while (at(Tok::Bar) && bar_continues_clauses()) {
            take();
            bool m2 = false;
            if (at(Tok::KwMeth)) {
                take();
                m2 = true;
            }
            std::string n2 = expect(Tok::Ident).text;
            fd.clauses.push_back(clause_tail(n2, m2));
        }
        return fd;
    }

    FnClause clause_tail(std::string name, bool meth) {
        FnClause c;
        c.name = std::move(name);
        c.is_meth = meth;
        c.params.push_back(pattern());
        while (!at(Tok::Eq)) c.params.push_back(pattern());
        take();  // '='
        c.body = expr_core();
        return c;
    }

    // Inside a case, a `|` after a clause body may start the next case arm
    // rather than the next clause. A clause continuation scans as
    // `| meth? ident pattern+ =`; anything else leaves the bar alone.
    bool bar_continues_clauses() {
        if (case_depth_ == 0) return true;
        std::size_t save = pos_;
        bool ok = scan_clause_head();
        pos_ = save;
        return ok;
    }

    bool scan_clause_head() {
        take();  // '|'
        if (at(Tok::KwMeth)) take();
        if (!at(Tok::Ident)) return false;
        take();
        if (!scan_pattern()) return false;
        while (!at(Tok::Eq))
            if (!scan_pattern()) return false;
        return true;
    }

    bool scan_pattern() {
        switch (peek().kind) {
            case Tok::Ident:
            case Tok::Wild:
            case Tok::Number:
            case Tok::String:
                take();
                return true;
            case Tok::ConsName:
                take();
                return scan_pattern();
            case Tok::LParen: {
                take();
                if (at(Tok::RParen)) {
                    take();
                    return true;
                }
                if (!scan_pattern()) return false;
                while (at(Tok::Comma)) {
                    take();
                    if (!scan_pattern()) return false;
                }
                if (!at(Tok::RParen)) return false;
                take();
                return true;
            }
            default:
                return false;
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int case_depth_ = 0;
};

} // namespace

SProgram parse_program(std::string_view text) { return Parser(text).program(); }
SExprPtr parse_expr(std::string_view text) { return Parser(text).single_expr(); }
SItem parse_repl_item(std::string_view text) { return Parser(text).repl_item(); }

} // namespace braid
