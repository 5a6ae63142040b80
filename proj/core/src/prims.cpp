#include "braid/as_braid.hpp"
#include "braid/asmi_braid.hpp"
#include "braid/asmirs_braid.hpp"
#include "braid/errors.hpp"
#include "braid/graph.hpp"
#include "braid/interp.hpp"

namespace braid {

namespace {

std::int64_t need_num(Interp& in, Value v, const char* who) {
    if (!is<NumV>(v))
        throw RuntimeError(std::string(who) + ": expected a number, got " + in.print_value(v));
    return as<NumV>(v).n;
}

const std::string& need_str(Interp& in, Value v, const char* who) {
    if (!is<StrV>(v))
        throw RuntimeError(std::string(who) + ": expected a string, got " + in.print_value(v));
    return as<StrV>(v).s;
}

const std::vector<Value>& need_list(Interp& in, Value v, const char* who) {
    if (!is<ListV>(v))
        throw RuntimeError(std::string(who) + ": expected a list, got " + in.print_value(v));
    return as<ListV>(v).elems;
}

const Environment& need_env(Interp& in, Value v, const char* who) {
    if (!is<EnvV>(v))
        throw RuntimeError(std::string(who) + ": expected an environment, got " +
                           in.print_value(v));
    return as<EnvV>(v).env;
}

const std::vector<Value>& need_set(Interp& in, Value v, const char* who) {
    if (!is<SetV>(v))
        throw RuntimeError(std::string(who) + ": expected a set, got " + in.print_value(v));
    return as<SetV>(v).elems;
}

const std::vector<Value>& need_tuple(Interp& in, Value v, std::size_t n, const char* who) {
    if (!is<TupleV>(v) || as<TupleV>(v).elems.size() != n)
        throw RuntimeError(std::string(who) + ": expected a " + std::to_string(n) +
                           "-tuple, got " + in.print_value(v));
    return as<TupleV>(v).elems;
}

void reject_unfinished(Interp& in, Value v, const char* who) {
    if (is<HoleV>(v))
        throw RuntimeError(std::string(who) + ": value is not available yet (recursive "
                                              "definition observed before it was tied)");
    if (is<NullV>(v))
        throw RuntimeError(std::string(who) + ": null value");
}

bool bool_result(Interp& in, Value v, const char* who) {
    if (!is<BoolV>(v))
        throw RuntimeError(std::string(who) + ": predicate returned a non-boolean: " +
                           in.print_value(v));
    return as<BoolV>(v).b;
}

using Fn = std::function<Value(Interp&, const std::vector<Value>&)>;

void bind_prim(Interp& in, const std::string& name, int arity, Fn fn) {
    in.bind_global(name, in.prim(name, arity, std::move(fn)));
}

} // namespace

void install_prims(Interp& in) {
    // ---- literal values ----------------------------------------------------
    in.bind_global("eps", in.eps());
    in.bind_global("null", in.null_value());
    in.bind_global("true", in.boolean(true));
    in.bind_global("false", in.boolean(false));
    in.bind_global("nullclass", in.nullclass());
    in.bind_global("%nil", in.list({}));
    in.bind_global("%emptyenv", in.env_value(Environment{}));
    in.bind_global("%emptyset", in.set_of({}));
    in.bind_global("nullgraph", nullgraph(in));

    // ---- arithmetic and comparison ------------------------------------------
    auto arith = [&](const std::string& name, auto op) {
        bind_prim(in, name, 2, [name, op](Interp& in, const std::vector<Value>& a) {
            reject_unfinished(in, a[0], name.c_str());
            reject_unfinished(in, a[1], name.c_str());
            return in.num(op(need_num(in, a[0], name.c_str()), need_num(in, a[1], name.c_str())));
        });
    };
    arith("+", [](std::int64_t a, std::int64_t b) { return a + b; });
    arith("-", [](std::int64_t a, std::int64_t b) { return a - b; });
    arith("*", [](std::int64_t a, std::int64_t b) { return a * b; });
    bind_prim(in, "/", 2, [](Interp& in, const std::vector<Value>& a) {
        std::int64_t d = need_num(in, a[1], "/");
        if (d == 0) throw RuntimeError("division by zero");
        return in.num(need_num(in, a[0], "/") / d);
    });

    bind_prim(in, "=", 2, [](Interp& in, const std::vector<Value>& a) {
        return in.boolean(value_equal(a[0], a[1]));
    });
    bind_prim(in, "<>", 2, [](Interp& in, const std::vector<Value>& a) {
        return in.boolean(!value_equal(a[0], a[1]));
    });
    auto compare = [&](const std::string& name, auto op) {
        bind_prim(in, name, 2, [name, op](Interp& in, const std::vector<Value>& a) {
            if (is<NumV>(a[0]) && is<NumV>(a[1]))
                return in.boolean(op(as<NumV>(a[0]).n, as<NumV>(a[1]).n));
            if (is<StrV>(a[0]) && is<StrV>(a[1]))
                return in.boolean(op(as<StrV>(a[0]).s, as<StrV>(a[1]).s));
            throw RuntimeError(name + ": expected two numbers or two strings");
        });
    };
    compare("<", [](const auto& a, const auto& b) { return a < b; });
    compare("<=", [](const auto& a, const auto& b) { return a <= b; });
    compare(">", [](const auto& a, const auto& b) { return a > b; });
    compare(">=", [](const auto& a, const auto& b) { return a >= b; });

    // ---- tuples, lists, strings -----------------------------------------------
    bind_prim(in, "!", 2, [](Interp& in, const std::vector<Value>& a) {
        if (!is<TupleV>(a[0]))
            throw RuntimeError("!: expected a tuple, got " + in.print_value(a[0]));
        std::int64_t i = need_num(in, a[1], "!");
        const auto& elems = as<TupleV>(a[0]).elems;
        if (i < 1 || i > static_cast<std::int64_t>(elems.size()))
            throw RuntimeError("!: index " + std::to_string(i) + " out of range for a " +
                               std::to_string(elems.size()) + "-tuple");
        return elems[static_cast<std::size_t>(i - 1)];
    });
    bind_prim(in, "::", 2, [](Interp& in, const std::vector<Value>& a) {
        std::vector<Value> out{a[0]};
        const auto& tail = need_list(in, a[1], "::");
        out.insert(out.end(), tail.begin(), tail.end());
        return in.list(std::move(out));
    });
    bind_prim(in, "++", 2, [](Interp& in, const std::vector<Value>& a) -> Value {
        if (is<StrV>(a[0]) && is<StrV>(a[1])) return in.str(as<StrV>(a[0]).s + as<StrV>(a[1]).s);
        if (is<ListV>(a[0]) && is<ListV>(a[1])) {
            std::vector<Value> out = as<ListV>(a[0]).elems;
            const auto& tail = as<ListV>(a[1]).elems;
            out.insert(out.end(), tail.begin(), tail.end());
            return in.list(std::move(out));
        }
        throw RuntimeError("++: expected two lists or two strings, got " + in.print_value(a[0]) +
                           " and " + in.print_value(a[1]));
    });
    bind_prim(in, "isntuple", 1, [](Interp& in, const std::vector<Value>& a) {
        const auto& t = need_tuple(in, a[0], 2, "isntuple");
        std::int64_t n = need_num(in, t[1], "isntuple");
        return in.boolean(is<TupleV>(t[0]) &&
                          static_cast<std::int64_t>(as<TupleV>(t[0]).elems.size()) == n);
    });

    // ---- constructed values ------------------------------------------------------
    bind_prim(in, "isk", 1, [](Interp& in, const std::vector<Value>& a) {
        const auto& t = need_tuple(in, a[0], 2, "isk");
        std::string tag;
        if (is<StrV>(t[1])) {
            tag = as<StrV>(t[1]).s;
        } else if (is<PrimV>(t[1]) && as<PrimV>(t[1]).def->name.rfind("ctor:", 0) == 0) {
            tag = as<PrimV>(t[1]).def->name.substr(5);
        } else {
            throw RuntimeError("isk: expected a constructor, got " + in.print_value(t[1]));
        }
        return in.boolean(is<ConsV>(t[0]) && as<ConsV>(t[0]).tag == tag);
    });
    bind_prim(in, "stripk", 1, [](Interp& in, const std::vector<Value>& a) {
        if (!is<ConsV>(a[0]))
            throw RuntimeError("stripk: expected a constructed value, got " +
                               in.print_value(a[0]));
        return as<ConsV>(a[0]).payload;
    });

    // ---- environments ---------------------------------------------------------------
    bind_prim(in, "|->", 2, [](Interp& in, const std::vector<Value>& a) {
        return in.env_value(in.env_bind(need_str(in, a[0], "|->"), a[1]));
    });
    bind_prim(in, "&", 2, [](Interp& in, const std::vector<Value>& a) {
        return in.env_value(
            Environment::concat(need_env(in, a[0], "&"), need_env(in, a[1], "&")));
    });
    bind_prim(in, "@", 2, [](Interp& in, const std::vector<Value>& a) {
        return in.env_lookup(need_env(in, a[0], "@"), need_str(in, a[1], "@"));
    });
    bind_prim(in, "dom", 1, [](Interp& in, const std::vector<Value>& a) {
        std::vector<Value> keys;
        for (const auto& k : need_env(in, a[0], "dom").domain()) keys.push_back(in.str(k));
        return in.set_of(std::move(keys));
    });
    bind_prim(in, "envfold", 4, [](Interp& in, const std::vector<Value>& a) {
        const Environment& e = need_env(in, a[3], "envfold");
        Value acc = a[2];
        const auto& binds = e.bindings();
        for (auto it = binds.rbegin(); it != binds.rend(); ++it) {
            Value kv = in.apply2(a[1], in.str(it->first), in.load(it->second));
            acc = in.apply2(a[0], kv, acc);
        }
        return acc;
    });

    // ---- sets ---------------------------------------------------------------------------
    bind_prim(in, "singleton", 1, [](Interp& in, const std::vector<Value>& a) {
        return in.set_of({a[0]});
    });
    bind_prim(in, "union", 2, [](Interp& in, const std::vector<Value>& a) {
        std::vector<Value> out = need_set(in, a[0], "union");
        for (Value v : need_set(in, a[1], "union")) out.push_back(v);
        return in.set_of(std::move(out));
    });
    bind_prim(in, "\\\\", 2, [](Interp& in, const std::vector<Value>& a) {
        std::vector<Value> out;
        const auto& remove = need_set(in, a[1], "\\\\");
        for (Value v : need_set(in, a[0], "\\\\")) {
            bool dropped = false;
            for (Value r : remove)
                if (value_equal(v, r)) { dropped = true; break; }
            if (!dropped) out.push_back(v);
        }
        return in.set_of(std::move(out));
    });
    bind_prim(in, "member", 2, [](Interp& in, const std::vector<Value>& a) {
        for (Value v : need_set(in, a[1], "member"))
            if (value_equal(a[0], v)) return in.boolean(true);
        return in.boolean(false);
    });

    // ---- folds and list searching ------------------------------------------------------------
    bind_prim(in, "foldr", 4, [](Interp& in, const std::vector<Value>& a) {
        const auto& l = need_list(in, a[3], "foldr");
        Value acc = a[2];
        for (auto it = l.rbegin(); it != l.rend(); ++it)
            acc = in.apply2(a[0], in.apply(a[1], *it), acc);
        return acc;
    });
    bind_prim(in, "foldl", 4, [](Interp& in, const std::vector<Value>& a) {
        const auto& l = need_list(in, a[3], "foldl");
        Value acc = a[2];
        for (Value v : l) acc = in.apply2(a[0], acc, in.apply(a[1], v));
        return acc;
    });
    bind_prim(in, "find", 3, [](Interp& in, const std::vector<Value>& a) {
        for (Value v : need_list(in, a[2], "find"))
            if (bool_result(in, in.apply(a[0], v), "find")) return v;
        return a[1];
    });
    auto split = [](bool left) {
        return [left](Interp& in, const std::vector<Value>& a) {
            const char* who = left ? "splitlistl" : "splitlistr";
            const auto& t = need_tuple(in, a[0], 2, who);
            const auto& l = need_list(in, t[1], who);
            int count = 0;
            std::size_t at = 0;
            for (std::size_t i = 0; i < l.size(); ++i)
                if (value_equal(l[i], t[0])) { count++; at = i; }
            if (count != 1)
                throw RuntimeError(std::string(who) + ": value must occur exactly once in the "
                                                      "list (found " + std::to_string(count) + ")");
            std::vector<Value> first(l.begin(), l.begin() + at + (left ? 1 : 0));
            std::vector<Value> second(l.begin() + at + (left ? 1 : 0), l.end());
            return in.tuple({in.list(std::move(first)), in.list(std::move(second))});
        };
    };
    bind_prim(in, "splitlistl", 1, split(true));
    bind_prim(in, "splitlistr", 1, split(false));

    // ---- conversion, failure, control ------------------------------------------------------------
    bind_prim(in, "str", 1, [](Interp& in, const std::vector<Value>& a) {
        return in.str(in.print_value(a[0]));
    });
    bind_prim(in, "error", 1, [](Interp& in, const std::vector<Value>& a) -> Value {
        throw RuntimeError(is<StrV>(a[0]) ? as<StrV>(a[0]).s : in.print_value(a[0]));
    });
    bind_prim(in, "fix", 1, [](Interp& in, const std::vector<Value>& a) {
        return in.fix(a[0]);
    });

    // ---- closures: reification, installation, alternation, extension -----------------------------
    bind_prim(in, "reify", 1, [](Interp& in, const std::vector<Value>& a) {
        if (!is<ClosureV>(a[0]))
            throw RuntimeError("reify: expected a closure, got " + in.print_value(a[0]));
        return in.env_value(as<ClosureV>(a[0]).env);
    });
    bind_prim(in, "install", 1, [](Interp& in, const std::vector<Value>& a) {
        const auto& t = need_tuple(in, a[0], 2, "install");
        const Environment& e = need_env(in, t[0], "install");
        if (!is<ClosureV>(t[1]))
            throw RuntimeError("install: expected a closure, got " + in.print_value(t[1]));
        const auto& c = as<ClosureV>(t[1]);
        return in.closure(c.param, c.body, e);
    });
    // e |hook| f: extend the environment of a function on the right
    bind_prim(in, "%hook", 2, [](Interp& in, const std::vector<Value>& a) {
        const Environment& e = need_env(in, a[0], "open");
        if (!is<ClosureV>(a[1]))
            throw RuntimeError("open: expected a closure, got " + in.print_value(a[1]));
        const auto& c = as<ClosureV>(a[1]);
        return in.closure(c.param, c.body, Environment::concat(c.env, e));
    });
    // (f1 |alt| f2)(v): first alternative unless it fails with eps
    bind_prim(in, "%alt", 3, [](Interp& in, const std::vector<Value>& a) {
        Value x = in.apply(a[0], a[2]);
        if (is<EpsV>(x)) return in.apply(a[1], a[2]);
        return x;
    });
    {
        // assignment: the application rule captures the target location
        Value assign = in.prim("%assign", 2, [](Interp& in, const std::vector<Value>& a) {
            if (!is<LocV>(a[0])) throw RuntimeError(":=: malformed assignment target");
            in.store_set(as<LocV>(a[0]).loc, a[1]);
            return a[1];
        });
        in.bind_global("%assign", assign);
        in.assign_def_ = as<PrimV>(assign).def;
    }

    // ---- message passing and object construction ----------------------------------------------------
    bind_prim(in, "send", 1, [](Interp& in, const std::vector<Value>& a) {
        const auto& t = need_tuple(in, a[0], 3, "send");
        return in.send(t[0], need_str(in, t[1], "send"), t[2]);
    });
    bind_prim(in, "mkobj", 2, [](Interp& in, const std::vector<Value>& a) {
        return mkobj(in, a[0], a[1]);
    });
    bind_prim(in, "getallenv", 1, [](Interp& in, const std::vector<Value>& a) -> Value {
        if (is<AsObjV>(a[0])) return in.env_value(getallenv_as(in, a[0]));
        if (is<GraphV>(a[0])) return in.env_value(getallenv_graph(in, *as<GraphV>(a[0]).g));
        if (is<ReflV>(a[0])) {
            Value rep = as<ReflV>(a[0]).o->rep;
            if (is<GraphV>(rep)) return in.env_value(getallenv_graph(in, *as<GraphV>(rep).g));
        }
        throw RuntimeError("getallenv: expected an object, got " + in.print_value(a[0]));
    });
    bind_prim(in, "obj", 1, [](Interp& in, const std::vector<Value>& a) {
        const auto& t = need_tuple(in, a[0], 2, "obj");
        return in.refl_object(t[0], t[1]);
    });
    bind_prim(in, "classof", 1, [](Interp& in, const std::vector<Value>& a) {
        return classof(in, a[0]);
    });
    bind_prim(in, "repof", 1, [](Interp& in, const std::vector<Value>& a) {
        return repof(in, a[0]);
    });
    bind_prim(in, "instantiate", 1, [](Interp& in, const std::vector<Value>& a) {
        return instantiate(in, a[0]);
    });
    bind_prim(in, "cg", 1, [](Interp& in, const std::vector<Value>& a) {
        return class_graph(in, a[0]);
    });

    // ---- graph operators ---------------------------------------------------------------------------------
    bind_prim(in, "onr", 1, [](Interp& in, const std::vector<Value>& a) {
        return order_value(in, a[0], Collapse::Final);
    });
    bind_prim(in, "onl", 1, [](Interp& in, const std::vector<Value>& a) {
        return order_value(in, a[0], Collapse::First);
    });
    bind_prim(in, "gm", 2, [](Interp& in, const std::vector<Value>& a) {
        return graph_map(in, a[0], a[1]);
    });
    bind_prim(in, "gmerge", 2, [](Interp& in, const std::vector<Value>& a) {
        return gmerge(in, a[0], a[1]);
    });
    bind_prim(in, "root", 1, [](Interp& in, const std::vector<Value>& a) {
        return root_value(in, a[0]);
    });
    bind_prim(in, "targetnodes", 2, [](Interp& in, const std::vector<Value>& a) {
        return targetnodes_value(in, a[0], a[1]);
    });
    bind_prim(in, "traverse", 1, [](Interp& in, const std::vector<Value>& a) {
        return traverse_value(in, a[0]);
    });
    bind_prim(in, "sort", 2, [](Interp& in, const std::vector<Value>& a) {
        return sort_value(in, a[0], a[1]);
    });
    bind_prim(in, "mark", 2, [](Interp& in, const std::vector<Value>& a) {
        if (!is<NodeV>(a[1]))
            throw RuntimeError("mark: expected a graph node, got " + in.print_value(a[1]));
        return mark_node(in, a[0], as<NodeV>(a[1]).addr);
    });
    bind_prim(in, "unmark", 1, [](Interp& in, const std::vector<Value>& a) {
        return unmark(in, a[0]);
    });
    bind_prim(in, "getenv", 1, [](Interp& in, const std::vector<Value>& a) {
        if (!is<NodeV>(a[0]))
            throw RuntimeError("getenv: expected a graph node, got " + in.print_value(a[0]));
        return as<NodeV>(a[0]).ivars;
    });
    bind_prim(in, "getmeths", 1, [](Interp& in, const std::vector<Value>& a) {
        if (!is<NodeV>(a[0]))
            throw RuntimeError("getmeths: expected a graph node, got " + in.print_value(a[0]));
        return as<NodeV>(a[0]).meths;
    });
}

} // namespace braid
