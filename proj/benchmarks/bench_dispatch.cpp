#include <benchmark/benchmark.h>

#include <sstream>

#include "braid/as_braid.hpp"
#include "braid/asmi_braid.hpp"
#include "braid/asmirs_braid.hpp"
#include "braid/desugar.hpp"
#include "braid/interp.hpp"
#include "braid/parser.hpp"

using namespace braid;

namespace {

// A single-inheritance chain of the given depth with the probed method at the
// bottom, so every send walks the whole chain.
struct AsChain {
    Interp in;
    Value instance;

    explicit AsChain(int depth) {
        AsBootstrap& b = in.as_braid();
        in.load_braid(Braid::As);
        in.run_source("let meth fwd(v) = send(next, \"init\", v);;"
                      "let meth probe(v) = 1;;");
        Value parent = in.eval_expr_source(
            "send(object, \"subclass\", ({}, [], (\"init\" |-> fwd) & (\"probe\" |-> probe)))");
        for (int i = 0; i < depth; ++i) {
            in.bind_global("p", parent);
            parent = in.eval_expr_source("send(p, \"subclass\", ({}, [], (\"init\" |-> fwd)))");
        }
        in.bind_global("leaf", parent);
        instance = in.eval_expr_source("send(leaf, \"new\", [])");
        (void)b;
    }
};

void BM_as_dispatch_depth(benchmark::State& state) {
    AsChain chain(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(chain.in.send(chain.instance, "probe", chain.in.unit()));
}
BENCHMARK(BM_as_dispatch_depth)->Arg(1)->Arg(8)->Arg(32);

struct MiDiamond {
    Interp in;
    Value instance;

    MiDiamond() {
        in.asmi_braid();
        in.load_braid(Braid::Asmi);
        in.run_source(
            "let meth fwd(v) = send(next, \"init\", v);;"
            "let meth probe(v) = 1;;"
            "let g = send(class, \"new\", [[object], [], (\"init\" |-> fwd) & (\"probe\" |-> probe)]);;"
            "let a = send(class, \"new\", [[g], [], (\"init\" |-> fwd)]);;"
            "let b = send(class, \"new\", [[g], [], (\"init\" |-> fwd)]);;"
            "let d = send(class, \"new\", [[a, b], [], (\"init\" |-> fwd)]);;");
        instance = in.eval_expr_source("send(d, \"new\", [])");
    }
};

void BM_asmi_diamond_dispatch(benchmark::State& state) {
    MiDiamond d;
    for (auto _ : state)
        benchmark::DoNotOptimize(d.in.send(d.instance, "probe", d.in.unit()));
}
BENCHMARK(BM_asmi_diamond_dispatch);

void BM_asmirs_meta_regress(benchmark::State& state) {
    Interp in;
    in.asmirs_braid();
    in.load_braid(Braid::Asmirs);
    in.run_source(
        "let meth fwd(v) = send(next, \"init\", v);;"
        "let meth probe(v) = 1;;"
        "let k = send(class, \"new\", [[object], [], (\"init\" |-> fwd) & (\"probe\" |-> probe)]);;"
        "let i = send(k, \"new\", []);;");
    Value inst = in.eval_expr_source("i");
    for (auto _ : state) benchmark::DoNotOptimize(in.send(inst, "probe", in.unit()));
}
BENCHMARK(BM_asmirs_meta_regress);

void BM_bootstrap_as(benchmark::State& state) {
    for (auto _ : state) {
        Interp in;
        benchmark::DoNotOptimize(&in.as_braid());
    }
}
BENCHMARK(BM_bootstrap_as);

const char kParseSample[] =
    "let nth(l, i) = (foldl(\\s. \\x. if (s ! 1) = i then ((s ! 1) + 1, x)"
    " else ((s ! 1) + 1, s ! 2))(\\x. x)((1, eps))(l)) ! 2;;"
    "let meth pointinit(v) = x := nth(v, 1); y := nth(v, 2); send(next, \"init\", [nth(v, 3)]);;"
    "let point = send(object, \"subclass\", ({}, [\"x\", \"y\"], (\"init\" |-> pointinit)));;";

void BM_parse_and_desugar(benchmark::State& state) {
    for (auto _ : state) {
        SProgram p = parse_program(kParseSample);
        benchmark::DoNotOptimize(desugar(p));
    }
}
BENCHMARK(BM_parse_and_desugar);

} // namespace

BENCHMARK_MAIN();
