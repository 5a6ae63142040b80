#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <sstream>

#include "harness.hpp"

using namespace braid;
using braid::testing::structurally_equivalent;

namespace {

struct AsFixture {
    Interp in;
    AsBootstrap& b;
    AsFixture() : b(in.as_braid()) {
        in.load_braid(Braid::As);
        in.bind_global("om", b.om);
        in.bind_global("cdm", b.cdm);
        in.bind_global("cdv", b.cdv);
        in.bind_global("mm", b.mm);
        in.bind_global("cm", b.cm);
    }
    Value eval(const std::string& s) { return in.eval_expr_source(s); }
    std::vector<std::string> flat_ienv_domain(Value cls) {
        return getallenv_as(in, cls).domain();
    }
    std::set<std::string> selector_set(Value cls) {
        std::set<std::string> out;
        for (const auto& layer : as_layers(cls))
            out.insert(layer.menv_domain.begin(), layer.menv_domain.end());
        return out;
    }
    Value ivar(Value cls, const char* key) {
        return in.env_lookup(getallenv_as(in, cls), key);
    }
};

const std::set<std::string> kClassProtocol = {"new", "init", "subclass", "dnu"};

} // namespace

TEST_CASE("bootstrap: class-shaped state and protocol everywhere") {
    AsFixture f;
    for (Value cls : {f.b.object, f.b.oc, f.b.cd, f.b.cdc, f.b.mc, f.b.mcc, f.b.klass, f.b.cc}) {
        auto dom = f.flat_ienv_domain(cls);
        std::set<std::string> doms(dom.begin(), dom.end());
        CHECK(doms == std::set<std::string>{"super", "ivars", "menv", "class"});
        CHECK(f.selector_set(cls) == kClassProtocol);
    }
}

TEST_CASE("bootstrap: the displayed class descriptions") {
    AsFixture f;
    // object: super nullclass, ivars ["class"], method suite init+dnu
    CHECK(f.ivar(f.b.object, "super") == f.in.nullclass());
    CHECK(f.in.print_value(f.ivar(f.b.object, "ivars")) == "[\"class\"]");
    CHECK(as<EnvV>(f.ivar(f.b.object, "menv")).env.domain() ==
          std::vector<std::string>{"init", "dnu"});
    CHECK(f.ivar(f.b.object, "class") == f.b.oc);

    // cd: super object, ivars ["super","ivars","menv"], suite new+init
    CHECK(f.ivar(f.b.cd, "super") == f.b.object);
    CHECK(f.in.print_value(f.ivar(f.b.cd, "ivars")) == "[\"super\", \"ivars\", \"menv\"]");
    CHECK(as<EnvV>(f.ivar(f.b.cd, "menv")).env.domain() ==
          std::vector<std::string>{"new", "init"});
    CHECK(f.ivar(f.b.cd, "class") == f.b.cdc);

    // mc and class: both under cd, each contributing its own subclass method
    CHECK(f.ivar(f.b.mc, "super") == f.b.cd);
    CHECK(as<EnvV>(f.ivar(f.b.mc, "menv")).env.domain() ==
          std::vector<std::string>{"subclass"});
    CHECK(f.ivar(f.b.mc, "class") == f.b.mcc);
    CHECK(f.ivar(f.b.klass, "super") == f.b.cd);
    CHECK(as<EnvV>(f.ivar(f.b.klass, "menv")).env.domain() ==
          std::vector<std::string>{"subclass"});
    CHECK(f.ivar(f.b.klass, "class") == f.b.cc);

    // metaclass links mirror the class links
    CHECK(f.ivar(f.b.oc, "super") == f.b.klass);
    CHECK(f.ivar(f.b.cdc, "super") == f.b.oc);
    CHECK(f.ivar(f.b.mcc, "super") == f.b.cdc);
    CHECK(f.ivar(f.b.cc, "super") == f.b.cdc);
    for (Value meta : {f.b.oc, f.b.cdc, f.b.mcc, f.b.cc})
        CHECK(f.ivar(meta, "class") == f.b.mc);

    // the expanded object onion has four layers, innermost binding class -> oc
    auto layers = as_layers(f.b.object);
    REQUIRE(layers.size() == 4);
    CHECK(layers[0].ienv_domain.empty());
    CHECK(layers[1].menv_domain == std::vector<std::string>{"subclass"});
    CHECK(layers[2].ienv_domain == std::vector<std::string>{"super", "ivars", "menv"});
    CHECK(layers[3].ienv_domain == std::vector<std::string>{"class"});
}

TEST_CASE("mkobj") {
    AsFixture f;
    // nullclass instantiates to the heart, whose flattened environment is empty
    Value o = f.in.str("owner");
    Value heart = mkobj(f.in, f.in.nullclass(), o);
    CHECK(as<AsObjV>(heart).obj->is_null);
    CHECK(as<AsObjV>(heart).obj->self == o);
    CHECK(getallenv_as(f.in, heart).empty());

    // a fresh point instance binds x and y to null before init
    Value point = f.eval(
        "send(object, \"subclass\", ({}, [\"x\", \"y\"], (\"gx\" |-> (\\t. \\v. 0))))");
    Value hole = f.in.hole();
    Value inst = mkobj(f.in, point, hole);
    Environment flat = getallenv_as(f.in, inst);
    CHECK(is<NullV>(f.in.env_lookup(flat, "x")));
    CHECK(is<NullV>(f.in.env_lookup(flat, "y")));
    CHECK(is<NullV>(f.in.env_lookup(flat, "class")));

    // malformed class
    Value bare = f.in.as_object(AsObjectNode{false, Environment{}, Environment{},
                                             mkobj(f.in, f.in.nullclass(), o), o});
    CHECK_THROWS_AS(mkobj(f.in, bare, o), RuntimeError);
}

TEST_CASE("instances created through new are self-knotted") {
    AsFixture f;
    f.in.run_source("let meth finit(v) = send(next, \"init\", v);;"
                    "let k = send(object, \"subclass\", ({}, [], (\"init\" |-> finit)));;"
                    "let i = send(k, \"new\", []);;");
    Value inst = f.eval("i");
    REQUIRE(is<AsObjV>(inst));
    const AsObjectNode* node = as<AsObjV>(inst).obj;
    while (!node->is_null) {
        CHECK(as<AsObjV>(node->self).obj == as<AsObjV>(inst).obj);
        node = as<AsObjV>(node->super).obj;
    }
    CHECK(as<AsObjV>(node->self).obj == as<AsObjV>(inst).obj);
}

TEST_CASE("send searches outermost-in and resumes below the defining layer") {
    AsFixture f;
    std::string src =
        "let meth fwd(v) = send(next, \"init\", v);;"
        "let meth outer(v) = \"outer+\" ++ (send(next, \"m\", v));;"
        "let meth inner(v) = \"inner\";;"
        "let base = send(object, \"subclass\", ({}, [], (\"init\" |-> fwd) & (\"m\" |-> inner)));;"
        "let derived = send(base, \"subclass\", ({}, [], (\"init\" |-> fwd) & (\"m\" |-> outer)));;"
        "let i = send(derived, \"new\", []);;";
    f.in.run_source(src);
    CHECK(f.in.print_value(f.eval("send(i, \"m\", ())")) == "\"outer+inner\"");
}

TEST_CASE("unknown selectors raise not-understood through the inherited handler") {
    AsFixture f;
    f.in.run_source("let meth fwd(v) = send(next, \"init\", v);;"
                    "let k = send(object, \"subclass\", ({}, [], (\"init\" |-> fwd)));;"
                    "let i = send(k, \"new\", []);;");
    CHECK_THROWS_WITH_AS(f.eval("send(i, \"nope\", 7)"),
                         "message (\"nope\", 7) not understood", RuntimeError);
}

TEST_CASE("an object with no dnu handler fails hard instead of looping") {
    AsFixture f;
    Value owner = f.in.hole();
    AsObjectNode heart;
    heart.is_null = true;
    heart.self = owner;
    AsObjectNode layer;
    layer.super = f.in.as_object(std::move(heart));
    layer.self = owner;
    Value obj = f.in.as_object(std::move(layer));
    owner->v = obj->v;
    try {
        send_as(f.in, obj, "anything", f.in.unit());
        FAIL("expected an error");
    } catch (const RuntimeError& e) {
        CHECK(std::string(e.what()).find("no dnu handler") != std::string::npos);
    }
}

TEST_CASE("objinit stores the class and answers self") {
    AsFixture f;
    Environment ienv = f.in.env_bind("class", f.in.null_value());
    Value self = f.in.str("receiver");
    Value hidden = f.in.tuple({self, f.in.unit(), f.in.env_value(ienv)});
    Value r = f.in.apply(f.in.apply(f.b.objinit, hidden), f.in.list({f.b.klass}));
    CHECK(r == self);
    CHECK(f.in.env_lookup(ienv, "class") == f.b.klass);
}

TEST_CASE("subclass produces the displayed shape, metaclass included") {
    AsFixture f;
    f.in.run_source(
        "let meth g1(v) = 1;;"
        "let meth cm1(v) = 2;;"
        "let sub = send(object, \"subclass\", ((\"classm\" |-> cm1), [\"a\", \"b\"], (\"g1\" |-> g1)));;");
    Value sub = f.eval("sub");
    CHECK(f.ivar(sub, "super") == f.b.object);
    CHECK(f.in.print_value(f.ivar(sub, "ivars")) == "[\"a\", \"b\"]");
    CHECK(as<EnvV>(f.ivar(sub, "menv")).env.domain() == std::vector<std::string>{"g1"});

    // its metaclass: an mc instance whose super is the receiver's class
    Value meta = f.ivar(sub, "class");
    CHECK(f.ivar(meta, "super") == f.b.oc);
    CHECK(f.in.print_value(f.ivar(meta, "ivars")) == "[]");
    CHECK(as<EnvV>(f.ivar(meta, "menv")).env.domain() == std::vector<std::string>{"classm"});
    CHECK(f.ivar(meta, "class") == f.b.mc);

    // class methods are answered by the class itself
    CHECK(f.in.print_value(f.eval("send(sub, \"classm\", ())")) == "2");
}

TEST_CASE("re-evaluating the defining expressions reproduces the bootstrap") {
    AsFixture f;
    f.in.bind_global("nullclass", f.in.nullclass());
    auto equiv = [&](const char* expr, Value expected) {
        Value got = f.eval(expr);
        CHECK_MESSAGE(structurally_equivalent(f.in, got, expected), expr);
    };
    equiv("send(oc, \"new\", [nullclass, [\"class\"], om])", f.b.object);
    equiv("send(mc, \"new\", [class, [], {}])", f.b.oc);
    equiv("send(object, \"subclass\", ({}, cdv, cdm))", f.b.cd);
    equiv("send(cd, \"subclass\", ({}, [], mm))", f.b.mc);
    equiv("send(cd, \"subclass\", ({}, [], cm))", f.b.klass);
}

TEST_CASE("metaclass tree mirrors the class tree on random chains") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        AsFixture f;
        std::vector<Value> classes{f.b.object};
        int depth = 2 + static_cast<int>(rng() % 4);
        for (int i = 0; i < depth; ++i) {
            Value parent = classes[rng() % classes.size()];
            f.in.bind_global("p" + std::to_string(i), parent);
            classes.push_back(f.eval("send(p" + std::to_string(i) +
                                     ", \"subclass\", ({}, [], {}))"));
        }
        for (Value cls : classes) {
            Value sup = f.ivar(cls, "super");
            if (is<NullClassV>(sup)) continue;
            Value meta = f.ivar(cls, "class");
            Value meta_super = f.ivar(meta, "super");
            Value parent_meta = f.ivar(sup, "class");
            CHECK(meta_super == parent_meta);
        }
    }
}

TEST_CASE("instances contain every inherited ivar name") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        AsFixture f;
        f.in.run_source("let meth fwd(v) = send(next, \"init\", v);;");
        Value parent = f.b.object;
        std::set<std::string> expected{"class"};
        int depth = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < depth; ++i) {
            int nvars = static_cast<int>(rng() % 3);
            std::string ivars = "[";
            for (int v = 0; v < nvars; ++v) {
                std::string name = "w" + std::to_string(i) + "_" + std::to_string(v);
                expected.insert(name);
                ivars += (v ? ", \"" : "\"") + name + "\"";
            }
            ivars += "]";
            f.in.bind_global("p", parent);
            parent = f.eval("send(p, \"subclass\", ({}, " + ivars + ", (\"init\" |-> fwd)))");
        }
        f.in.bind_global("leaf", parent);
        Value inst = f.eval("send(leaf, \"new\", [])");
        auto dom = getallenv_as(f.in, inst).domain();
        CHECK(std::set<std::string>(dom.begin(), dom.end()) == expected);
    }
}

TEST_CASE("every selector either dispatches or raises not-understood") {
    AsFixture f;
    f.in.run_source("let meth fwd(v) = send(next, \"init\", v);;"
                    "let meth hit(v) = \"hit\";;"
                    "let k = send(object, \"subclass\", ({}, [], (\"init\" |-> fwd) & (\"sel0\" |-> hit)));;"
                    "let i = send(k, \"new\", []);;");
    for (const char* sel : {"sel0", "sel1", "sel2"}) {
        try {
            Value r = f.eval(std::string("send(i, \"") + sel + "\", ())");
            CHECK(f.in.print_value(r) == "\"hit\"");
        } catch (const RuntimeError& e) {
            CHECK(std::string(e.what()).find("not understood") != std::string::npos);
        }
    }
}

TEST_CASE("inner layers win when ivar names collide") {
    AsFixture f;
    // per the concatenation order, the deeper layer's binding is rightmost
    f.in.run_source(
        "let meth binit(v) = x := 1; send(next, \"init\", v);;"
        "let meth dinit(v) = send(next, \"init\", v); self;;"
        "let meth readx(m) = x;;"
        "let base = send(object, \"subclass\", ({}, [\"x\"], (\"init\" |-> binit)));;"
        "let deriv = send(base, \"subclass\", ({}, [\"x\"], (\"init\" |-> dinit) & (\"readx\" |-> readx)));;"
        "let i = send(deriv, \"new\", []);;");
    CHECK(f.in.print_value(f.eval("send(i, \"readx\", ())")) == "1");
}
