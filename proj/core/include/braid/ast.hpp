#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace braid {

struct SExpr;
using SExprPtr = std::shared_ptr<const SExpr>;
struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

// ---------------------------------------------------------------------------
// Patterns
// ---------------------------------------------------------------------------

struct PIdent { std::string name; };
struct PWild {};
struct PTuple { std::vector<PatternPtr> elems; };  // arity 0 (unit) or >= 2
struct PCons { std::string tag; PatternPtr inner; };
struct PNum { std::int64_t n; };
struct PStr { std::string s; };

using PatternVariant = std::variant<PIdent, PWild, PTuple, PCons, PNum, PStr>;
struct Pattern {
    PatternVariant v;
};

// ---------------------------------------------------------------------------
// Declarations
// ---------------------------------------------------------------------------

// One clause of a named function: `f p1 p2 = e` or `meth f p1 = e`. Clauses
// keep their own names; alternation is only defined when they all agree,
// which the desugarer enforces.
struct FnClause {
    std::string name;
    bool is_meth = false;
    std::vector<PatternPtr> params;  // nonempty
    SExprPtr body;
};

struct SimpleDecl { std::string name; SExprPtr value; };          // i = e
struct FnDecl { std::string name; std::vector<FnClause> clauses; };  // clause alternation

using Declaration = std::variant<SimpleDecl, FnDecl>;

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

struct EIdent { std::string name; };
struct ENum { std::int64_t n; };
struct EStr { std::string s; };
struct EEps {};
struct ENull {};
struct EUnit {};
struct EEmptyEnv {};
struct EEmptySet {};
struct ELam { std::vector<PatternPtr> params; SExprPtr body; };
struct EApp { SExprPtr fn; SExprPtr arg; };
struct EInfix { std::string op; SExprPtr lhs; SExprPtr rhs; };
struct EIf { SExprPtr cond; SExprPtr then_e; SExprPtr else_e; };
struct ETuple { std::vector<SExprPtr> elems; };  // arity >= 2
struct ESeq { SExprPtr first; SExprPtr second; };
struct EList { std::vector<SExprPtr> elems; };
struct EWhere { SExprPtr body; std::vector<Declaration> decls; };
struct ELet { std::vector<Declaration> decls; SExprPtr body; };
struct CaseArm { PatternPtr pat; SExprPtr body; };
struct ECase { SExprPtr scrutinee; std::vector<CaseArm> arms; };
struct EOpen { SExprPtr env_expr; SExprPtr body; };

using SExprVariant = std::variant<EIdent, ENum, EStr, EEps, ENull, EUnit, EEmptyEnv, EEmptySet,
                                  ELam, EApp, EInfix, EIf, ETuple, ESeq, EList, EWhere, ELet,
                                  ECase, EOpen>;

struct SExpr {
    SExprVariant v;
    int line = 0;
    int col = 0;
};

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

struct DeclGroupItem { std::vector<Declaration> decls; };
struct ExprItem { SExprPtr expr; };
using SItem = std::variant<DeclGroupItem, ExprItem>;

struct SProgram {
    std::vector<SItem> items;
};

// Source pretty-printer. Emits fully parenthesized concrete syntax that parses
// back to the same AST.
std::string pretty(const SExpr& e);
std::string pretty(const Pattern& p);
std::string pretty(const Declaration& d);
std::string pretty(const SProgram& p);

} // namespace braid
