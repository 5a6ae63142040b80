#pragma once

#include "braid/ast.hpp"
#include "braid/kernel_ast.hpp"

namespace braid {

// Rewrites the sugared AST into the kernel language: currying, pattern
// compilation, clause alternation, method expansion, infix currying,
// let/where/case/open elimination. Introduced identifiers live in a reserved
// namespace (`%`-prefixed) the lexer cannot produce, so they can never capture
// user references even under environment reification.
class Desugarer {
public:
    KProgram program(const SProgram& p);
    KItem item(const SItem& item);
    KExprPtr expr(const SExpr& e);

private:
    KExprPtr lam_chain(const std::vector<PatternPtr>& params, KExprPtr body);
    KExprPtr pattern_lam(const Pattern& p, KExprPtr body);
    KExprPtr meth_value(const std::vector<PatternPtr>& params, const SExpr& body);
    KExprPtr decl_apply(const std::vector<Declaration>& decls, KExprPtr body);
    std::pair<std::string, KExprPtr> named_decl(const Declaration& d);
    std::string fresh(const char* stem);

    int counter_ = 0;
};

KProgram desugar(const SProgram& p);
KExprPtr desugar_expr(const SExpr& e);

} // namespace braid
