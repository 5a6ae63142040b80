#include "braid/kernel_ast.hpp"

#include <map>
#include <sstream>

namespace braid {

namespace {
KExprPtr mk(KVariant v) {
    auto e = std::make_shared<KExpr>();
    e->v = std::move(v);
    return e;
}
} // namespace

KExprPtr kident(std::string name) { return mk(KIdent{std::move(name)}); }
KExprPtr knum(std::int64_t n) { return mk(KNum{n}); }
KExprPtr kstr(std::string s) { return mk(KStr{std::move(s)}); }
KExprPtr klam(std::string param, KExprPtr body) { return mk(KLam{std::move(param), std::move(body)}); }
KExprPtr kthunk(KExprPtr body) { return mk(KThunk{std::move(body)}); }
KExprPtr kapp(KExprPtr fn, KExprPtr arg) { return mk(KApp{std::move(fn), std::move(arg)}); }
KExprPtr kapp2(KExprPtr fn, KExprPtr a, KExprPtr b) {
    return kapp(kapp(std::move(fn), std::move(a)), std::move(b));
}
KExprPtr kif(KExprPtr c, KExprPtr t, KExprPtr e) {
    return mk(KIf{std::move(c), std::move(t), std::move(e)});
}
KExprPtr ktuple(std::vector<KExprPtr> elems) { return mk(KTuple{std::move(elems)}); }
KExprPtr kseq(KExprPtr a, KExprPtr b) { return mk(KSeq{std::move(a), std::move(b)}); }

namespace {

// Operator identifiers rendered infix by the dumper. The two reserved
// combinators get readable spellings.
const std::map<std::string, std::string> kInfixNames = {
    {"+", "+"},   {"-", "-"},   {"*", "*"},       {"/", "/"},     {"=", "="},
    {"<>", "<>"}, {"<", "<"},   {"<=", "<="},     {">", ">"},     {">=", ">="},
    {"++", "++"}, {"::", "::"}, {"@", "@"},       {"&", "&"},     {"|->", "|->"},
    {"union", "union"},         {"\\\\", "\\\\"}, {"!", "!"},
    {"%hook", "|hook|"},        {"%alt", "|alt|"},
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\\\"";
        else if (c == '\\') out += "\\\\";
        else out += c;
    }
    out += "\"";
    return out;
}

// Conditionals and sequences have no closing delimiter of their own; lambda
// bodies wrap them in parentheses.
bool needs_body_parens(const KExpr& e) {
    return std::holds_alternative<KIf>(e.v) || std::holds_alternative<KSeq>(e.v);
}

bool is_lambda(const KExpr& e) {
    return std::holds_alternative<KLam>(e.v) || std::holds_alternative<KThunk>(e.v);
}

// When an application's function position is `((op a) ...)` for a known infix
// operator identifier, print `(a op b)` instead of the curried form.
const std::string* infix_op_of(const KExpr& fn) {
    const auto* app = std::get_if<KApp>(&fn.v);
    if (!app) return nullptr;
    const auto* id = std::get_if<KIdent>(&app->fn->v);
    if (!id) return nullptr;
    auto it = kInfixNames.find(id->name);
    return it == kInfixNames.end() ? nullptr : &it->second;
}

void dump(const KExpr& e, std::ostream& os) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, KIdent>) {
                os << n.name;
            } else if constexpr (std::is_same_v<T, KNum>) {
                os << n.n;
            } else if constexpr (std::is_same_v<T, KStr>) {
                os << quote(n.s);
            } else if constexpr (std::is_same_v<T, KLam>) {
                os << "\\" << n.param << ".";
                if (needs_body_parens(*n.body)) {
                    os << "(";
                    dump(*n.body, os);
                    os << ")";
                } else {
                    dump(*n.body, os);
                }
            } else if constexpr (std::is_same_v<T, KThunk>) {
                os << "\\().";
                if (needs_body_parens(*n.body)) {
                    os << "(";
                    dump(*n.body, os);
                    os << ")";
                } else {
                    dump(*n.body, os);
                }
            } else if constexpr (std::is_same_v<T, KApp>) {
                if (const std::string* op = infix_op_of(*n.fn)) {
                    const auto& lhs = std::get<KApp>(n.fn->v).arg;
                    os << "(";
                    dump(*lhs, os);
                    os << " " << *op << " ";
                    dump(*n.arg, os);
                    os << ")";
                    return;
                }
                // assignment keeps its surface spelling
                if (const auto* inner = std::get_if<KApp>(&n.fn->v)) {
                    if (const auto* id = std::get_if<KIdent>(&inner->fn->v);
                        id && id->name == "%assign") {
                        os << "(";
                        dump(*inner->arg, os);
                        os << " := ";
                        dump(*n.arg, os);
                        os << ")";
                        return;
                    }
                }
                os << "(";
                if (is_lambda(*n.fn)) {
                    os << "(";
                    dump(*n.fn, os);
                    os << ")";
                } else {
                    dump(*n.fn, os);
                }
                os << " ";
                dump(*n.arg, os);
                os << ")";
            } else if constexpr (std::is_same_v<T, KIf>) {
                os << "if ";
                dump(*n.cond, os);
                os << " then ";
                dump(*n.then_e, os);
                os << " else ";
                dump(*n.else_e, os);
            } else if constexpr (std::is_same_v<T, KTuple>) {
                os << "(";
                for (std::size_t i = 0; i < n.elems.size(); ++i) {
                    if (i) os << ", ";
                    dump(*n.elems[i], os);
                }
                os << ")";
            } else if constexpr (std::is_same_v<T, KSeq>) {
                os << "(";
                dump(*n.first, os);
                os << "; ";
                dump(*n.second, os);
                os << ")";
            }
        },
        e.v);
}

} // namespace

std::string dump_kernel(const KExpr& e) {
    std::ostringstream os;
    dump(e, os);
    return os.str();
}

std::string dump_kernel(const KItem& item) {
    std::ostringstream os;
    if (const auto* let = std::get_if<KLetGroup>(&item)) {
        os << "let ";
        if (let->names.size() == 1) {
            os << let->names[0] << " = ";
            dump(*let->exprs[0], os);
        } else {
            os << "(";
            for (std::size_t i = 0; i < let->names.size(); ++i) {
                if (i) os << ", ";
                os << let->names[i];
            }
            os << ") = (";
            for (std::size_t i = 0; i < let->exprs.size(); ++i) {
                if (i) os << ", ";
                dump(*let->exprs[i], os);
            }
            os << ")";
        }
    } else {
        dump(*std::get<KEval>(item).expr, os);
    }
    return os.str();
}

std::string dump_kernel(const KProgram& p) {
    std::string out;
    for (const auto& item : p.items) {
        out += dump_kernel(item);
        out += "\n";
    }
    return out;
}

} // namespace braid
