#include "braid/ast.hpp"

#include <sstream>

namespace braid {

namespace {

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

struct Printer {
    std::ostringstream os;

    void pat(const Pattern& p) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, PIdent>) os << n.name;
                else if constexpr (std::is_same_v<T, PWild>) os << "_";
                else if constexpr (std::is_same_v<T, PNum>) os << n.n;
                else if constexpr (std::is_same_v<T, PStr>) os << quote(n.s);
                else if constexpr (std::is_same_v<T, PCons>) {
                    os << n.tag << "(";
                    pat(*n.inner);
                    os << ")";
                } else if constexpr (std::is_same_v<T, PTuple>) {
                    os << "(";
                    for (std::size_t i = 0; i < n.elems.size(); ++i) {
                        if (i) os << ", ";
                        pat(*n.elems[i]);
                    }
                    os << ")";
                }
            },
            p.v);
    }

    void decl(const Declaration& d) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, SimpleDecl>) {
                    os << n.name << " = ";
                    expr(*n.value);
                } else {
                    for (std::size_t i = 0; i < n.clauses.size(); ++i) {
                        const FnClause& c = n.clauses[i];
                        if (i) os << " | ";
                        if (c.is_meth) os << "meth ";
                        os << c.name;
                        for (const auto& p : c.params) {
                            os << " ";
                            pat(*p);
                        }
                        os << " = ";
                        expr(*c.body);
                    }
                }
            },
            d);
    }

    void decls(const std::vector<Declaration>& ds) {
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (i) os << ", ";
            decl(ds[i]);
        }
    }

    void expr(const SExpr& e) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, EIdent>) os << n.name;
                else if constexpr (std::is_same_v<T, ENum>) os << n.n;
                else if constexpr (std::is_same_v<T, EStr>) os << quote(n.s);
                else if constexpr (std::is_same_v<T, EEps>) os << "eps";
                else if constexpr (std::is_same_v<T, ENull>) os << "null";
                else if constexpr (std::is_same_v<T, EUnit>) os << "()";
                else if constexpr (std::is_same_v<T, EEmptyEnv>) os << "{}";
                else if constexpr (std::is_same_v<T, EEmptySet>) os << "{||}";
                else if constexpr (std::is_same_v<T, ELam>) {
                    os << "(\\";
                    for (std::size_t i = 0; i < n.params.size(); ++i) {
                        if (i) os << " ";
                        pat(*n.params[i]);
                    }
                    os << ". ";
                    expr(*n.body);
                    os << ")";
                } else if constexpr (std::is_same_v<T, EApp>) {
                    os << "(";
                    expr(*n.fn);
                    os << " ";
                    expr(*n.arg);
                    os << ")";
                } else if constexpr (std::is_same_v<T, EInfix>) {
                    os << "(";
                    expr(*n.lhs);
                    os << " " << n.op << " ";
                    expr(*n.rhs);
                    os << ")";
                } else if constexpr (std::is_same_v<T, EIf>) {
                    os << "(if ";
                    expr(*n.cond);
                    os << " then ";
                    expr(*n.then_e);
                    os << " else ";
                    expr(*n.else_e);
                    os << ")";
                } else if constexpr (std::is_same_v<T, ETuple>) {
                    os << "(";
                    for (std::size_t i = 0; i < n.elems.size(); ++i) {
                        if (i) os << ", ";
                        expr(*n.elems[i]);
                    }
                    os << ")";
                } else if constexpr (std::is_same_v<T, ESeq>) {
                    os << "(";
                    expr(*n.first);
                    os << "; ";
                    expr(*n.second);
                    os << ")";
                } else if constexpr (std::is_same_v<T, EList>) {
                    os << "[";
                    for (std::size_t i = 0; i < n.elems.size(); ++i) {
                        if (i) os << ", ";
                        expr(*n.elems[i]);
                    }
                    os << "]";
                } else if constexpr (std::is_same_v<T, EWhere>) {
                    os << "(";
                    expr(*n.body);
                    os << " where ";
                    decls(n.decls);
                    os << ")";
                } else if constexpr (std::is_same_v<T, ELet>) {
                    os << "(let ";
                    decls(n.decls);
                    os << " in ";
                    expr(*n.body);
                    os << ")";
                } else if constexpr (std::is_same_v<T, ECase>) {
                    os << "(case ";
                    expr(*n.scrutinee);
                    os << " of ";
                    for (std::size_t i = 0; i < n.arms.size(); ++i) {
                        if (i) os << " | ";
                        pat(*n.arms[i].pat);
                        os << " => ";
                        expr(*n.arms[i].body);
                    }
                    os << " end)";
                } else if constexpr (std::is_same_v<T, EOpen>) {
                    os << "(open ";
                    expr(*n.env_expr);
                    os << " in ";
                    expr(*n.body);
                    os << ")";
                }
            },
            e.v);
    }
};

} // namespace

std::string pretty(const SExpr& e) {
    Printer p;
    p.expr(e);
    return p.os.str();
}

std::string pretty(const Pattern& p) {
    Printer pr;
    pr.pat(p);
    return pr.os.str();
}

std::string pretty(const Declaration& d) {
    Printer pr;
    pr.decl(d);
    return pr.os.str();
}

std::string pretty(const SProgram& p) {
    std::ostringstream os;
    for (const auto& item : p.items) {
        if (const auto* d = std::get_if<DeclGroupItem>(&item)) {
            Printer pr;
            pr.decls(d->decls);
            os << "let " << pr.os.str() << ";;\n";
        } else {
            os << pretty(*std::get<ExprItem>(item).expr) << ";;\n";
        }
    }
    return os.str();
}

} // namespace braid
