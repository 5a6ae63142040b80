#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "braid/desugar.hpp"
#include "braid/errors.hpp"
#include "braid/interp.hpp"
#include "braid/parser.hpp"

using namespace braid;

namespace {

std::string dump_item(const std::string& src) {
    SProgram p = parse_program(src);
    REQUIRE(p.items.size() == 1);
    Desugarer d;  // fresh introduced-identifier counters per input
    return dump_kernel(d.item(p.items[0]));
}

// Mechanical check of the kernel invariants: single-identifier binders only,
// tuple arities 0 or >= 2, and no sugar constructs (guaranteed by the type,
// re-checked here over the structure).
void check_kernel(const KExpr& e) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, KLam>) {
                CHECK(!n.param.empty());
                check_kernel(*n.body);
            } else if constexpr (std::is_same_v<T, KThunk>) {
                check_kernel(*n.body);
            } else if constexpr (std::is_same_v<T, KApp>) {
                check_kernel(*n.fn);
                check_kernel(*n.arg);
            } else if constexpr (std::is_same_v<T, KIf>) {
                check_kernel(*n.cond);
                check_kernel(*n.then_e);
                check_kernel(*n.else_e);
            } else if constexpr (std::is_same_v<T, KTuple>) {
                CHECK(n.elems.size() != 1);
                for (const auto& el : n.elems) check_kernel(*el);
            } else if constexpr (std::is_same_v<T, KSeq>) {
                check_kernel(*n.first);
                check_kernel(*n.second);
            }
        },
        e.v);
}

} // namespace

TEST_CASE("golden kernel forms, one per rewrite rule") {
    std::ifstream f(std::string(BRAID_GOLDEN_DIR) + "/desugar_rules.golden");
    REQUIRE(f.good());
    std::string line, rule, input;
    int checked = 0;
    while (std::getline(f, line)) {
        if (line.rfind("rule: ", 0) == 0) rule = line.substr(6);
        else if (line.rfind("in: ", 0) == 0) input = line.substr(4);
        else if (line.rfind("out: ", 0) == 0) {
            INFO(rule);
            CHECK(dump_item(input) == line.substr(5));
            checked++;
        }
    }
    CHECK(checked >= 18);
}

TEST_CASE("already-kernel expressions pass through unchanged") {
    CHECK(dump_item("\\x. x;;") == "\\x.x");
    CHECK(dump_item("f x;;") == "(f x)");
}

TEST_CASE("kernel invariants hold across the whole tour") {
    std::ifstream f(std::string(BRAID_CORPUS_DIR) + "/syntax_tour.gb");
    std::ostringstream ss;
    ss << f.rdbuf();
    KProgram p = desugar(parse_program(ss.str()));
    for (const auto& item : p.items) {
        if (const auto* let = std::get_if<KLetGroup>(&item))
            for (const auto& e : let->exprs) check_kernel(*e);
        else
            check_kernel(*std::get<KEval>(item).expr);
    }
}

TEST_CASE("desugaring is deterministic") {
    std::string a = dump_item("let meth m(p, q) = p + q;;");
    std::string b = dump_item("let meth m(p, q) = p + q;;");
    CHECK(a == b);
}

TEST_CASE("clause groups that mix names are rejected") {
    SProgram p = parse_program("let f 1 = 1 | g 2 = 2;;");
    CHECK_THROWS_AS(desugar(p), DesugarError);
}

TEST_CASE("alternation composition falls through on eps only") {
    Interp in;
    in.run_source("let f 1 = \"a\" | f 2 = \"b\";;");
    CHECK(in.print_value(in.eval_expr_source("f 1")) == "\"a\"");
    // second clause receives the original argument, not the failure value
    CHECK(in.print_value(in.eval_expr_source("f 2")) == "\"b\"");
    CHECK(in.print_value(in.eval_expr_source("f 3")) == "eps");
}

TEST_CASE("a desugared method sees self, next and the opened environment") {
    Interp in;
    in.run_source("let meth m(p) = (self, next, iv + p);;");
    Value m = in.eval_expr_source("m");
    Value self = in.str("the-self");
    Value next = in.str("the-next");
    Value env = in.env_value(in.env_bind("iv", in.num(10)));
    Value inner = in.apply(m, in.tuple({self, next, env}));
    Value result = in.apply(inner, in.num(5));
    REQUIRE(is<TupleV>(result));
    const auto& t = as<TupleV>(result).elems;
    CHECK(t[0] == self);
    CHECK(t[1] == next);
    CHECK(in.print_value(t[2]) == "15");
}

TEST_CASE("method pattern mismatch yields eps, and assignment reaches the opened env") {
    Interp in;
    in.run_source("let meth put(1) = iv := 42; iv;;");
    Value m = in.eval_expr_source("put");
    Environment e = in.env_bind("iv", in.num(0));
    Value inner = in.apply(m, in.tuple({in.unit(), in.unit(), in.env_value(e)}));
    CHECK(is<EpsV>(in.apply(inner, in.num(2))));
    Value ok = in.apply(inner, in.num(1));
    CHECK(in.print_value(ok) == "42");
    CHECK(in.print_value(in.env_lookup(e, "iv")) == "42");
}

TEST_CASE("semantic preservation spot checks") {
    Interp in;
    CHECK(in.print_value(in.eval_expr_source("let f = \\x. x + y where y = 1 in f 2")) == "3");
    CHECK(in.print_value(in.eval_expr_source("case (1, 2) of (a, b) => a + b end")) == "3");
    CHECK(in.print_value(in.eval_expr_source("open (\"y\" |-> 1) in y")) == "1");
}
