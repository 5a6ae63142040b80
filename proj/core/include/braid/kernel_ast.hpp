#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace braid {

struct KExpr;
using KExprPtr = std::shared_ptr<const KExpr>;

struct KIdent { std::string name; };
struct KNum { std::int64_t n; };
struct KStr { std::string s; };
struct KLam { std::string param; KExprPtr body; };
struct KThunk { KExprPtr body; };  // nullary lambda introduced by `open`
struct KApp { KExprPtr fn; KExprPtr arg; };
struct KIf { KExprPtr cond; KExprPtr then_e; KExprPtr else_e; };
struct KTuple { std::vector<KExprPtr> elems; };  // arity 0 (unit) or >= 2
struct KSeq { KExprPtr first; KExprPtr second; };

using KVariant = std::variant<KIdent, KNum, KStr, KLam, KThunk, KApp, KIf, KTuple, KSeq>;

struct KExpr {
    KVariant v;
};

KExprPtr kident(std::string name);
KExprPtr knum(std::int64_t n);
KExprPtr kstr(std::string s);
KExprPtr klam(std::string param, KExprPtr body);
KExprPtr kthunk(KExprPtr body);
KExprPtr kapp(KExprPtr fn, KExprPtr arg);
KExprPtr kapp2(KExprPtr fn, KExprPtr a, KExprPtr b);
KExprPtr kif(KExprPtr c, KExprPtr t, KExprPtr e);
KExprPtr ktuple(std::vector<KExprPtr> elems);
KExprPtr kseq(KExprPtr a, KExprPtr b);

// One top-level item: a (possibly mutually recursive) declaration group or an
// expression evaluated for its printed value. A group of size one is the plain
// `let I = E` form; larger groups are the tupled single declaration that the
// declaration-sequence rewrite produces.
struct KLetGroup {
    std::vector<std::string> names;
    std::vector<KExprPtr> exprs;
};
struct KEval {
    KExprPtr expr;
};
using KItem = std::variant<KLetGroup, KEval>;

struct KProgram {
    std::vector<KItem> items;
};

// Stable textual form of the kernel AST (format v1), used by golden tests and
// the CLI `desugar` mode.
std::string dump_kernel(const KExpr& e);
std::string dump_kernel(const KItem& item);
std::string dump_kernel(const KProgram& p);

} // namespace braid
