#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <thread>
#include <sstream>

#include "braid/errors.hpp"
#include "braid/interp.hpp"

using namespace braid;

namespace {

std::string eval_str(Interp& in, const std::string& src) {
    return in.print_value(in.eval_expr_source(src));
}

} // namespace

TEST_CASE("call-by-value basics") {
    Interp in;
    CHECK(eval_str(in, "(\\x. x) 5") == "5");
    in.run_source("let i = 1;;");
    CHECK(eval_str(in, "i := 10; i") == "10");
    CHECK(eval_str(in, "let f = \\x. x + y where y = 1 in f 2") == "3");
    CHECK_THROWS_WITH_AS(in.eval_expr_source("nosuch"), "unbound identifier 'nosuch'",
                         RuntimeError);
    CHECK_THROWS_AS(in.eval_expr_source("1 2"), RuntimeError);
    CHECK_THROWS_AS(in.eval_expr_source("if 1 then 2 else 3"), RuntimeError);
}

TEST_CASE("environment lookup: absence is eps, rightmost wins") {
    Interp in;
    CHECK(eval_str(in, "{} @ \"k\"") == "eps");
    CHECK(eval_str(in, "((\"k\" |-> 1) & (\"k\" |-> 2)) @ \"k\"") == "2");
    CHECK(eval_str(in, "((\"a\" |-> 1) & (\"b\" |-> 2)) @ \"a\"") == "1");
}

TEST_CASE("environment domain and concatenation laws") {
    Interp in;
    CHECK(eval_str(in, "dom({})") == "{||}");
    CHECK(eval_str(in, "dom((\"a\" |-> 1) & (\"a\" |-> 2))") == "{|\"a\"|}");

    // concat associativity and identity, property-tested over random envs
    std::mt19937_64 rng(7);
    const char* keys[] = {"a", "b", "c", "d"};
    for (int trial = 0; trial < 500; ++trial) {
        auto random_env = [&]() {
            Environment e;
            int n = static_cast<int>(rng() % 4);
            for (int i = 0; i < n; ++i)
                e = Environment::concat(
                    e, in.env_bind(keys[rng() % 4], in.num(static_cast<std::int64_t>(rng() % 100))));
            return e;
        };
        Environment a = random_env(), b = random_env(), c = random_env();
        Environment l = Environment::concat(Environment::concat(a, b), c);
        Environment r = Environment::concat(a, Environment::concat(b, c));
        Environment il = Environment::concat(Environment{}, a);
        Environment ir = Environment::concat(a, Environment{});
        for (const char* k : keys) {
            CHECK(in.env_lookup(l, k) == in.env_lookup(r, k));
            CHECK(in.env_lookup(il, k) == in.env_lookup(ir, k));
            CHECK(in.env_lookup(il, k) == in.env_lookup(a, k));
        }
    }
}

TEST_CASE("locations are shared, never copied") {
    Interp in;
    Environment e1 = in.env_bind("x", in.num(1));
    Environment view1 = Environment::concat(e1, in.env_bind("y", in.num(2)));
    Environment view2 = Environment::concat(in.env_bind("z", in.num(3)), e1);
    in.env_assign(view1, "x", in.num(42));
    CHECK(in.print_value(in.env_lookup(view2, "x")) == "42");
    CHECK(in.print_value(in.env_lookup(e1, "x")) == "42");
}

TEST_CASE("reify and install round-trip; extension shadows on the right") {
    Interp in;
    in.run_source("let f = \\x. x + 1;;");
    CHECK(eval_str(in, "(install((reify(f), f))) 41") == "42");
    CHECK_THROWS_AS(in.eval_expr_source("reify(1)"), RuntimeError);
    CHECK_THROWS_AS(in.eval_expr_source("install((({}), 1))"), RuntimeError);

    // extend((y |-> 1), \x. x + y) applied to 2; y unbound at closure creation
    in.run_source("let g = \\x. x + y;;");
    Value hook = in.env_lookup(in.globals(), "%hook");
    Value extended = in.apply2(hook, in.env_value(in.env_bind("y", in.num(1))),
                               in.eval_expr_source("g"));
    CHECK(in.print_value(in.apply(extended, in.num(2))) == "3");
    CHECK(eval_str(in, "open (\"y\" |-> 1) in y") == "1");
}

TEST_CASE("fixpoint ties knots and guards divergence") {
    Interp in;
    CHECK(eval_str(in, "fix(\\f. \\n. if n = 0 then 1 else n * (f (n - 1))) 5") == "120");

    // the produced value is its own component
    Value v = in.eval_expr_source("fix(\\self. (self, 1, 2))");
    REQUIRE(is<TupleV>(v));
    CHECK(as<TupleV>(v).elems[0] == v);

    CHECK_THROWS_AS(in.eval_expr_source("fix(\\x. x + 1)"), RuntimeError);
    CHECK_THROWS_AS(in.eval_expr_source("fix(\\x. x)"), RuntimeError);
}

TEST_CASE("application depth guard raises instead of hanging") {
    Interp::Config cfg;
    cfg.depth_limit = 100;
    std::ostringstream sink;
    cfg.out = &sink;
    Interp in(cfg);
    CHECK_THROWS_WITH_AS(
        in.eval_expr_source("fix(\\f. \\n. if n = 0 then 1 else n * (f (n - 1))) 5000"),
        "application depth limit exceeded (100 frames)", RuntimeError);
}

TEST_CASE("folds match the displayed bracketings and direct recursion") {
    Interp in;
    CHECK(eval_str(in, "foldr(\\a. \\b. a + b)(\\x. x)(0)([1, 2, 3])") == "6");
    CHECK(eval_str(in, "foldl(\\acc. \\x. x :: acc)(\\x. x)([])([1, 2, 3])") == "[3, 2, 1]");
    CHECK(eval_str(in, "foldr(\\a. \\b. a + b)(\\x. x)(7)([])") == "7");

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int n = static_cast<int>(rng() % 65);
        std::vector<std::int64_t> xs;
        std::vector<Value> vals;
        for (int i = 0; i < n; ++i) {
            xs.push_back(static_cast<std::int64_t>(rng() % 1000));
            vals.push_back(in.num(xs.back()));
        }
        // right fold: f(x1) - (f(x2) - (... - seed))
        std::int64_t expect_r = 5;
        for (auto it = xs.rbegin(); it != xs.rend(); ++it) expect_r = *it - expect_r;
        std::int64_t expect_l = 5;
        for (std::int64_t x : xs) expect_l = expect_l - x;
        Value sub = in.eval_expr_source("\\a. \\b. a - b");
        Value idf = in.eval_expr_source("\\x. x");
        Value foldr = in.eval_expr_source("foldr");
        Value foldl = in.eval_expr_source("foldl");
        Value rr = in.apply(in.apply2(in.apply(foldr, sub), idf, in.num(5)), in.list(vals));
        Value ll = in.apply(in.apply2(in.apply(foldl, sub), idf, in.num(5)), in.list(vals));
        CHECK(as<NumV>(rr).n == expect_r);
        CHECK(as<NumV>(ll).n == expect_l);
    }
}

TEST_CASE("environment homomorphism") {
    Interp in;
    CHECK(eval_str(in, "envfold(\\kv. \\acc. kv & acc)(\\k. \\v. k |-> v)({})({})") == "{}");
    // the displayed two-binding example, seeded with an empty environment
    CHECK(eval_str(in,
                   "envfold(\\kv. \\acc. kv & acc)(\\k. \\v. k |-> v)({})"
                   "((\"k1\" |-> 1) & {} & (\"k2\" |-> 2))") ==
          "{\"k1\" |-> 1, \"k2\" |-> 2}");
    // identity homomorphism reproduces an equal environment
    Interp in2;
    Value v = in2.eval_expr_source(
        "envfold(\\kv. \\acc. kv & acc)(\\k. \\v. k |-> v)({})((\"a\" |-> 1) & (\"b\" |-> 2))");
    Value orig = in2.eval_expr_source("(\"a\" |-> 1) & (\"b\" |-> 2)");
    for (const char* k : {"a", "b"})
        CHECK(value_equal(in2.env_lookup(as<EnvV>(v).env, k),
                          in2.env_lookup(as<EnvV>(orig).env, k)));
}

TEST_CASE("splitlist and find") {
    Interp in;
    CHECK(eval_str(in, "splitlistl((2, [1, 2, 3]))") == "([1, 2], [3])");
    CHECK(eval_str(in, "splitlistr((2, [1, 2, 3]))") == "([1], [2, 3])");
    CHECK(eval_str(in, "find(\\x. x > 3)(eps)([1, 3, 5])") == "5");
    CHECK(eval_str(in, "find(\\x. x > 9)(eps)([1, 3, 5])") == "eps");
    CHECK_THROWS_AS(in.eval_expr_source("splitlistl((9, [1, 2]))"), RuntimeError);
    CHECK_THROWS_AS(in.eval_expr_source("splitlistl((1, [1, 1]))"), RuntimeError);
    // splitting reassembles the list
    CHECK(eval_str(in, "(splitlistl((2, [1, 2, 3])) ! 1) ++ (splitlistl((2, [1, 2, 3])) ! 2)") ==
          "[1, 2, 3]");
}

TEST_CASE("primitive shapes and errors") {
    Interp in;
    CHECK(eval_str(in, "(10, 20) ! 1") == "10");
    CHECK(eval_str(in, "(10, 20) ! 2") == "20");
    CHECK_THROWS_AS(in.eval_expr_source("(10, 20) ! 3"), RuntimeError);
    CHECK(eval_str(in, "isk((K(5), K))") == "true");
    CHECK(eval_str(in, "isk((K(5), \"J\"))") == "false");
    CHECK(eval_str(in, "stripk(K(5))") == "5");
    CHECK_THROWS_AS(in.eval_expr_source("stripk(5)"), RuntimeError);
    CHECK(eval_str(in, "isntuple(((1, 2), 2))") == "true");
    CHECK(eval_str(in, "isntuple((5, 2))") == "false");
    CHECK_THROWS_WITH_AS(in.eval_expr_source("error(\"boom\")"), "boom", RuntimeError);
    CHECK(eval_str(in, "str(1 :: [2])") == "\"[1, 2]\"");
    CHECK_THROWS_AS(in.eval_expr_source("1 / 0"), RuntimeError);
}

TEST_CASE("value equality: structural for data, identity for objects") {
    Interp in;
    CHECK(eval_str(in, "(1, \"a\") = (1, \"a\")") == "true");
    CHECK(eval_str(in, "[1, 2] = [1, 2]") == "true");
    CHECK(eval_str(in, "eps = eps") == "true");
    CHECK(eval_str(in, "null = eps") == "false");
    CHECK(eval_str(in, "(singleton(1) union singleton(2)) = (singleton(2) union singleton(1))") ==
          "true");
    CHECK(eval_str(in, "K(1) = K(1)") == "true");
    CHECK(eval_str(in, "K(1) = J(1)") == "false");
}

TEST_CASE("the value printer renders every kind") {
    Interp in;
    CHECK(eval_str(in, "0 - 42") == "-42");
    CHECK(eval_str(in, "\"a\\\"b\"") == "\"a\\\"b\"");
    CHECK(eval_str(in, "(1, (2, 3))") == "(1, (2, 3))");
    CHECK(eval_str(in, "()") == "()");
    CHECK(eval_str(in, "[[1], []]") == "[[1], []]");
    CHECK(eval_str(in, "singleton(2) union singleton(1)") == "{|2, 1|}");  // insertion order
    CHECK(eval_str(in, "K(J(1))") == "K(J(1))");
    CHECK(eval_str(in, "\\x. x") == "<fn>");
    CHECK(eval_str(in, "send") == "<fn>");
    CHECK(eval_str(in, "eps") == "eps");
    CHECK(eval_str(in, "null") == "null");
    // flattened rightmost-wins, keys in first-occurrence order
    CHECK(eval_str(in, "(\"a\" |-> 1) & (\"b\" |-> 2) & (\"a\" |-> 3)") ==
          "{\"a\" |-> 3, \"b\" |-> 2}");
    CHECK(eval_str(in, "{}") == "{}");
    // cyclic values print finitely
    CHECK(eval_str(in, "fix(\\self. (1, self))") == "(1, ...)");
}

TEST_CASE("evaluation is deterministic across runs") {
    const std::string src = "let xs = [3, 1, 2];;\nfoldr(\\a. \\b. a :: b)(\\x. x * 2)([])(xs);;";
    std::ostringstream o1, o2;
    {
        Interp::Config c;
        c.out = &o1;
        Interp in(c);
        in.run_source(src);
    }
    {
        Interp::Config c;
        c.out = &o2;
        Interp in(c);
        in.run_source(src);
    }
    CHECK(o1.str() == o2.str());
    CHECK(o1.str() == "[6, 2, 4]\n");
}

TEST_CASE("distinct interpreter instances are independent across threads") {
    std::vector<std::string> results(4);
    std::vector<std::thread> workers;
    for (int t = 0; t < 4; ++t) {
        workers.emplace_back([t, &results] {
            std::ostringstream out;
            Interp::Config cfg;
            cfg.out = &out;
            Interp in(cfg);
            in.load_braid(Braid::Asmi);
            in.run_source("let meth cinit(v) = n := 0; send(next, \"init\", v);;"
                          "let meth bump(m) = n := n + " + std::to_string(t + 1) + "; n;;"
                          "let k = send(class, \"new\", [[object], [\"n\"],"
                          " (\"init\" |-> cinit) & (\"bump\" |-> bump)]);;"
                          "let i = send(k, \"new\", []);;"
                          "send(i, \"bump\", ()); send(i, \"bump\", ());;");
            results[static_cast<std::size_t>(t)] = out.str();
        });
    }
    for (auto& w : workers) w.join();
    for (int t = 0; t < 4; ++t)
        CHECK(results[static_cast<std::size_t>(t)] == std::to_string(2 * (t + 1)) + "\n");
}

TEST_CASE("top-level let groups are mutually recursive") {
    std::ostringstream out;
    Interp::Config cfg;
    cfg.out = &out;
    Interp in(cfg);
    in.run_source(
        "let iseven n = if n = 0 then true else isodd (n - 1),"
        "    isodd n = if n = 0 then false else iseven (n - 1);;"
        "iseven 10;;");
    CHECK(out.str() == "true\n");
}
