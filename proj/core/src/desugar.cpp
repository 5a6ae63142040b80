#include "braid/desugar.hpp"

#include "braid/errors.hpp"

namespace braid {

namespace {

// Infix operators that desugar to curried applications of the identically
// named primitive.
bool plain_infix(const std::string& op) { return op != ":="; }

} // namespace

std::string Desugarer::fresh(const char* stem) {
    return std::string("%") + stem + std::to_string(counter_++);
}

KProgram Desugarer::program(const SProgram& p) {
    KProgram out;
    for (const auto& it : p.items) out.items.push_back(item(it));
    return out;
}

KItem Desugarer::item(const SItem& it) {
    if (const auto* group = std::get_if<DeclGroupItem>(&it)) {
        // A declaration sequence becomes the single tupled declaration
        // (i1, ..., in) = (e1, ..., en); the group is recursive, so names are
        // established before the right-hand sides run.
        KLetGroup let;
        for (const auto& d : group->decls) {
            auto [name, value] = named_decl(d);
            let.names.push_back(std::move(name));
            let.exprs.push_back(std::move(value));
        }
        return let;
    }
    return KEval{expr(*std::get<ExprItem>(it).expr)};
}

// name/body: a clause group collapses to one binding of the shared name to
// the alternation of the clause bodies.
std::pair<std::string, KExprPtr> Desugarer::named_decl(const Declaration& d) {
    if (const auto* s = std::get_if<SimpleDecl>(&d)) return {s->name, expr(*s->value)};

    const auto& fd = std::get<FnDecl>(d);
    KExprPtr body;
    for (const auto& c : fd.clauses) {
        if (c.name != fd.name)
            throw DesugarError("clauses of '" + fd.name + "' mix in a clause named '" + c.name +
                               "'; alternation is only defined for one name");
        KExprPtr one = c.is_meth ? meth_value(c.params, *c.body)
                                 : lam_chain(c.params, expr(*c.body));
        body = body ? kapp2(kident("%alt"), body, one) : one;
    }
    return {fd.name, body};
}

KExprPtr Desugarer::expr(const SExpr& e) {
    return std::visit(
        [&](const auto& n) -> KExprPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, EIdent>) {
                return kident(n.name);
            } else if constexpr (std::is_same_v<T, ENum>) {
                return knum(n.n);
            } else if constexpr (std::is_same_v<T, EStr>) {
                return kstr(n.s);
            } else if constexpr (std::is_same_v<T, EEps>) {
                return kident("eps");
            } else if constexpr (std::is_same_v<T, ENull>) {
                return kident("null");
            } else if constexpr (std::is_same_v<T, EUnit>) {
                return ktuple({});
            } else if constexpr (std::is_same_v<T, EEmptyEnv>) {
                return kident("%emptyenv");
            } else if constexpr (std::is_same_v<T, EEmptySet>) {
                return kident("%emptyset");
            } else if constexpr (std::is_same_v<T, ELam>) {
                return lam_chain(n.params, expr(*n.body));
            } else if constexpr (std::is_same_v<T, EApp>) {
                return kapp(expr(*n.fn), expr(*n.arg));
            } else if constexpr (std::is_same_v<T, EInfix>) {
                if (plain_infix(n.op))
                    return kapp2(kident(n.op), expr(*n.lhs), expr(*n.rhs));
                return kapp2(kident("%assign"), expr(*n.lhs), expr(*n.rhs));
            } else if constexpr (std::is_same_v<T, EIf>) {
                return kif(expr(*n.cond), expr(*n.then_e), expr(*n.else_e));
            } else if constexpr (std::is_same_v<T, ETuple>) {
                std::vector<KExprPtr> elems;
                for (const auto& el : n.elems) elems.push_back(expr(*el));
                return ktuple(std::move(elems));
            } else if constexpr (std::is_same_v<T, ESeq>) {
                return kseq(expr(*n.first), expr(*n.second));
            } else if constexpr (std::is_same_v<T, EList>) {
                KExprPtr out = kident("%nil");
                for (auto it = n.elems.rbegin(); it != n.elems.rend(); ++it)
                    out = kapp2(kident("::"), expr(**it), out);
                return out;
            } else if constexpr (std::is_same_v<T, EWhere>) {
                // e where d  ->  (\p.e)(d-values)
                return decl_apply(n.decls, expr(*n.body));
            } else if constexpr (std::is_same_v<T, ELet>) {
                return decl_apply(n.decls, expr(*n.body));
            } else if constexpr (std::is_same_v<T, ECase>) {
                // case e of a end -> a(e), arms composed as partial functions
                KExprPtr arms;
                for (const auto& arm : n.arms) {
                    KExprPtr one = pattern_lam(*arm.pat, expr(*arm.body));
                    arms = arms ? kapp2(kident("%alt"), arms, one) : one;
                }
                return kapp(arms, expr(*n.scrutinee));
            } else if constexpr (std::is_same_v<T, EOpen>) {
                // open e1 in e2 -> (e1 |hook| \().e2) ()
                return kapp(kapp2(kident("%hook"), expr(*n.env_expr), kthunk(expr(*n.body))),
                            ktuple({}));
            }
        },
        e.v);
}

KExprPtr Desugarer::lam_chain(const std::vector<PatternPtr>& params, KExprPtr body) {
    KExprPtr out = std::move(body);
    for (auto it = params.rbegin(); it != params.rend(); ++it) out = pattern_lam(**it, out);
    return out;
}

// A method has hidden parameters: meth ps.e -> \(self, next, i) ps. open i in e
KExprPtr Desugarer::meth_value(const std::vector<PatternPtr>& params, const SExpr& body) {
    std::string ienv = fresh("i");
    KExprPtr inner = kapp(kapp2(kident("%hook"), kident(ienv), kthunk(expr(body))), ktuple({}));
    inner = lam_chain(params, std::move(inner));

    auto triple = std::make_shared<Pattern>();
    triple->v = PTuple{{std::make_shared<Pattern>(Pattern{PIdent{"self"}}),
                        std::make_shared<Pattern>(Pattern{PIdent{"next"}}),
                        std::make_shared<Pattern>(Pattern{PIdent{ienv}})}};
    return pattern_lam(*triple, std::move(inner));
}

KExprPtr Desugarer::pattern_lam(const Pattern& p, KExprPtr body) {
    return std::visit(
        [&](const auto& n) -> KExprPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PIdent>) {
                return klam(n.name, std::move(body));
            } else if constexpr (std::is_same_v<T, PWild>) {
                return klam(fresh("w"), std::move(body));
            } else if constexpr (std::is_same_v<T, PTuple>) {
                std::string arg = fresh("t");
                // \ (p1,...,pn).e -> \i. if isntuple(i, n)
                //                        then let p1 = i!1 ... pn = i!n in e else eps
                KExprPtr inner = std::move(body);
                for (std::size_t i = n.elems.size(); i > 0; --i) {
                    KExprPtr proj = kapp2(kident("!"), kident(arg),
                                          knum(static_cast<std::int64_t>(i)));
                    inner = kapp(pattern_lam(*n.elems[i - 1], std::move(inner)), std::move(proj));
                }
                KExprPtr test = kapp(kident("isntuple"),
                                     ktuple({kident(arg),
                                             knum(static_cast<std::int64_t>(n.elems.size()))}));
                return klam(arg, kif(std::move(test), std::move(inner), kident("eps")));
            } else if constexpr (std::is_same_v<T, PCons>) {
                std::string arg = fresh("k");
                KExprPtr test = kapp(kident("isk"), ktuple({kident(arg), kstr(n.tag)}));
                KExprPtr strip = kapp(kident("stripk"), kident(arg));
                KExprPtr bound = kapp(pattern_lam(*n.inner, std::move(body)), std::move(strip));
                return klam(arg, kif(std::move(test), std::move(bound), kident("eps")));
            } else if constexpr (std::is_same_v<T, PNum>) {
                std::string arg = fresh("c");
                KExprPtr test = kapp2(kident("="), kident(arg), knum(n.n));
                return klam(arg, kif(std::move(test), std::move(body), kident("eps")));
            } else if constexpr (std::is_same_v<T, PStr>) {
                std::string arg = fresh("c");
                KExprPtr test = kapp2(kident("="), kident(arg), kstr(n.s));
                return klam(arg, kif(std::move(test), std::move(body), kident("eps")));
            }
        },
        p.v);
}

// let p... = e... in body and its `where` mirror: a declaration sequence is
// tupled into one declaration, then turned into a function application.
KExprPtr Desugarer::decl_apply(const std::vector<Declaration>& decls, KExprPtr body) {
    if (decls.size() == 1) {
        auto [name, value] = named_decl(decls[0]);
        return kapp(klam(std::move(name), std::move(body)), std::move(value));
    }
    std::vector<KExprPtr> values;
    std::vector<PatternPtr> names;
    PTuple tp;
    for (const auto& d : decls) {
        auto [name, value] = named_decl(d);
        tp.elems.push_back(std::make_shared<Pattern>(Pattern{PIdent{std::move(name)}}));
        values.push_back(std::move(value));
    }
    Pattern pat{std::move(tp)};
    return kapp(pattern_lam(pat, std::move(body)), ktuple(std::move(values)));
}

KProgram desugar(const SProgram& p) { return Desugarer().program(p); }
KExprPtr desugar_expr(const SExpr& e) { return Desugarer().expr(e); }

} // namespace braid
