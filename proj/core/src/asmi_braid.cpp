#include "braid/asmi_braid.hpp"

#include <algorithm>

#include "braid/asmirs_braid.hpp"
#include "braid/errors.hpp"
#include "braid/graph.hpp"
#include "braid/interp.hpp"

namespace braid {

namespace {

struct MethCtx {
    Value self;
    Value next;
    Environment env;
};

MethCtx meth_ctx(Interp& in, Value triple, const char* who) {
    if (!is<TupleV>(triple) || as<TupleV>(triple).elems.size() != 3)
        throw RuntimeError(std::string(who) + ": hidden method parameters missing");
    const auto& t = as<TupleV>(triple).elems;
    if (!is<EnvV>(t[2]))
        throw RuntimeError(std::string(who) + ": hidden environment parameter missing");
    return MethCtx{t[0], t[1], as<EnvV>(t[2]).env};
}

std::vector<Value> need_init_list(Interp& in, Value v, const char* who) {
    if (!is<ListV>(v))
        throw RuntimeError(std::string(who) + ": \"new\" expects a list of initialisation "
                                              "arguments, got " + in.print_value(v));
    return as<ListV>(v).elems;
}

const GraphData& class_object_graph(Interp& in, Value cls, const char* who) {
    if (is<GraphV>(cls)) return *as<GraphV>(cls).g;
    if (is<ReflV>(cls)) {
        Value rep = as<ReflV>(cls).o->rep;
        if (is<GraphV>(rep)) return *as<GraphV>(rep).g;
    }
    throw RuntimeError(std::string(who) + ": expected a graph-represented class, got " +
                       in.print_value(cls));
}

} // namespace

Environment getallenv_graph(Interp& in, const GraphData& g) {
    Environment acc;
    for (NodeAddr a : order_addrs(in, g, Collapse::Final)) {
        Value ivars = g.nodes.at(a).ivars;
        if (!is<EnvV>(ivars))
            throw RuntimeError("getallenv: node instance variables are not an environment");
        acc = Environment::concat(acc, as<EnvV>(ivars).env);
    }
    return acc;
}

Value class_graph(Interp& in, Value cls) {
    if (auto it = in.cg_memo.find(cls); it != in.cg_memo.end()) return it->second;
    if (std::find(in.cg_in_progress.begin(), in.cg_in_progress.end(), cls) !=
        in.cg_in_progress.end())
        throw RuntimeError("cg: class inherits from itself (cyclic superclass graph)");
    in.cg_in_progress.push_back(cls);

    Value result;
    try {
        const GraphData& g = class_object_graph(in, cls, "cg");
        Environment flat = getallenv_graph(in, g);
        Value supers = in.env_lookup(flat, "supers");
        Value ivars = in.env_lookup(flat, "ivars");
        Value menv = in.env_lookup(flat, "menv");
        if (!is<ListV>(supers) || !is<ListV>(ivars) || !is<EnvV>(menv))
            throw RuntimeError("cg: malformed class (missing supers/ivars/menv)");

        const auto& super_list = as<ListV>(supers).elems;
        Value merged = nullgraph(in);
        std::vector<Value> super_graphs(super_list.size());
        for (std::size_t i = super_list.size(); i > 0; --i) {
            super_graphs[i - 1] = class_graph(in, super_list[i - 1]);
            merged = gmerge(in, super_graphs[i - 1], merged);
        }

        // roots of the merged graph, in supers order; a super already interior
        // to another super's graph contributes no direct edge
        auto roots = root_addrs(*as<GraphV>(merged).g);
        std::vector<NodeAddr> root_order;
        for (Value sg : super_graphs) {
            auto sg_roots = root_addrs(*as<GraphV>(sg).g);
            if (sg_roots.size() != 1) throw RuntimeError("cg: malformed superclass graph");
            NodeAddr r = sg_roots[0];
            if (std::find(roots.begin(), roots.end(), r) == roots.end()) continue;
            if (std::find(root_order.begin(), root_order.end(), r) != root_order.end()) continue;
            root_order.push_back(r);
        }
        result = addnode(in, ivars, menv, merged, root_order);
    } catch (...) {
        in.cg_in_progress.pop_back();
        throw;
    }
    in.cg_in_progress.pop_back();
    in.cg_memo.emplace(cls, result);
    return result;
}

Value instantiate(Interp& in, Value cls) {
    Value cgv = class_graph(in, cls);
    GraphData* inst = graph_map_native(
        in, *as<GraphV>(cgv).g, [&](NodeAddr, const GraphData::Node& n) {
            if (!is<ListV>(n.ivars))
                throw RuntimeError("instantiate: class-graph node carries no name list");
            Environment e;
            for (Value name : as<ListV>(n.ivars).elems) {
                if (!is<StrV>(name))
                    throw RuntimeError("instantiate: ivar name is not a string");
                e.append(as<StrV>(name).s, in.alloc(in.null_value()));
            }
            return GraphData::Node{in.env_value(std::move(e)), n.meths, false};
        });
    return in.graph_value(inst);
}

Value send_asmi(Interp& in, Value receiver, const std::string& selector, Value arg) {
    Interp::DepthGuard guard(in);
    const GraphData& g = *as<GraphV>(receiver).g;
    std::vector<NodeAddr> order = order_addrs(in, g, Collapse::Final);

    NodeAddr hit = 0;
    bool found = false;
    for (NodeAddr a : order) {
        Value meths = g.nodes.at(a).meths;
        if (is<EnvV>(meths) && as<EnvV>(meths).env.binds(selector)) {
            hit = a;
            found = true;
            break;
        }
    }
    if (!found) {
        if (selector == "dnu")
            throw RuntimeError("no dnu handler: message " + in.print_value(arg) +
                               " fell through an object with no \"dnu\" method");
        return in.send(unmark(in, receiver), "dnu", in.tuple({in.str(selector), arg}));
    }

    // next-object: everything searched up to and including the hit is marked
    Value o1 = receiver;
    for (NodeAddr a : order) {
        o1 = mark_node(in, o1, a);
        if (a == hit) break;
    }
    Value o2 = unmark(in, receiver);

    Environment e;
    bool from_hit = false;
    for (NodeAddr a : order) {
        if (a == hit) from_hit = true;
        if (!from_hit) continue;
        Value ivars = g.nodes.at(a).ivars;
        if (is<EnvV>(ivars)) e = Environment::concat(e, as<EnvV>(ivars).env);
    }

    Value method = in.env_lookup(as<EnvV>(g.nodes.at(hit).meths).env, selector);
    in.trace_send_line(receiver, selector, "asmi", std::to_string(hit));
    Value hidden = in.tuple({o2, o1, in.env_value(e)});
    return in.apply(in.apply(method, hidden), arg);
}

AsmiBootstrap bootstrap_asmi(Interp& in) {
    AsmiBootstrap b;

    Value object_h = in.hole();
    Value class_h = in.hole();

    b.objinit = in.prim("objinit", 2, [](Interp& in, const std::vector<Value>& a) {
        MethCtx ctx = meth_ctx(in, a[0], "objinit");
        Value cls = a[1];
        if (is<ListV>(cls)) {
            const auto& elems = as<ListV>(cls).elems;
            if (elems.empty()) throw RuntimeError("objinit: empty initialisation arguments");
            cls = elems.back();
        }
        in.env_assign(ctx.env, "class", cls);
        return ctx.self;
    });
    b.objdnu = in.prim("objdnu", 2, [](Interp& in, const std::vector<Value>& a) -> Value {
        throw RuntimeError("message " + in.print_value(a[1]) + " not understood");
    });
    b.objgc = in.prim("objgc", 2, [](Interp& in, const std::vector<Value>& a) {
        MethCtx ctx = meth_ctx(in, a[0], "objgc");
        Value cls = in.env_lookup(ctx.env, "class");
        if (is<EpsV>(cls)) throw RuntimeError("objgc: receiver has no class variable");
        return cls;
    });
    b.classinit = in.prim("classinit", 2, [](Interp& in, const std::vector<Value>& a) {
        MethCtx ctx = meth_ctx(in, a[0], "classinit");
        auto args = need_init_list(in, a[1], "classinit");
        if (args.size() < 3)
            throw RuntimeError("classinit: expected [supers, ivars, menv] ++ rest");
        in.env_assign(ctx.env, "supers", args[0]);
        in.env_assign(ctx.env, "ivars", args[1]);
        in.env_assign(ctx.env, "menv", args[2]);
        std::vector<Value> rest(args.begin() + 3, args.end());
        return in.send(ctx.next, "init", in.list(std::move(rest)));
    });
    b.classnew = in.prim("classnew", 2, [](Interp& in, const std::vector<Value>& a) {
        MethCtx ctx = meth_ctx(in, a[0], "classnew");
        auto args = need_init_list(in, a[1], "classnew");
        Value inst = instantiate(in, ctx.self);
        args.push_back(ctx.self);
        return in.send(inst, "init", in.list(std::move(args)));
    });

    Environment om_env = Environment::concat(
        Environment::concat(in.env_bind("init", b.objinit), in.env_bind("dnu", b.objdnu)),
        in.env_bind("gc", b.objgc));
    Environment cm_env = Environment::concat(in.env_bind("init", b.classinit),
                                             in.env_bind("new", b.classnew));
    b.om = in.env_value(om_env);
    b.cm = in.env_value(cm_env);
    b.cdv = in.list({in.str("supers"), in.str("ivars"), in.str("menv")});

    // Both initial classes are instances of `class`, so both graphs share the
    // two-node instance shape: a class-description node over an object node.
    NodeAddr a_cls = in.fresh_node_addr();
    NodeAddr a_obj = in.fresh_node_addr();
    auto make_instance_graph = [&]() {
        GraphData* g = in.graph();
        Environment cls_ienv;
        for (const char* k : {"supers", "ivars", "menv"})
            cls_ienv.append(k, in.alloc(in.null_value()));
        Environment obj_ienv;
        obj_ienv.append("class", in.alloc(in.null_value()));
        g->nodes[a_cls] = GraphData::Node{in.env_value(cls_ienv), in.env_value(cm_env), false};
        g->nodes[a_obj] = GraphData::Node{in.env_value(obj_ienv), in.env_value(om_env), false};
        EdgeId e = in.fresh_edge_id();
        g->edges.push_back(e);
        g->src[e] = a_cls;
        g->tgt[e] = a_obj;
        g->order.emplace(a_cls, a_obj);
        return g;
    };

    auto assign = [&](GraphData* g, NodeAddr a, const char* key, Value v) {
        in.env_assign(as<EnvV>(g->nodes.at(a).ivars).env, key, v);
    };

    GraphData* gobject = make_instance_graph();
    assign(gobject, a_cls, "supers", in.list({}));
    assign(gobject, a_cls, "ivars", in.list({in.str("class")}));
    assign(gobject, a_cls, "menv", b.om);
    assign(gobject, a_obj, "class", class_h);
    object_h->v = GraphV{gobject};

    GraphData* gclass = make_instance_graph();
    assign(gclass, a_cls, "supers", in.list({object_h}));
    assign(gclass, a_cls, "ivars", b.cdv);
    assign(gclass, a_cls, "menv", b.cm);
    assign(gclass, a_obj, "class", class_h);
    class_h->v = GraphV{gclass};

    b.object = object_h;
    b.klass = class_h;

    // class is an instance of itself; object answers the standard protocol
    if (in.send(class_h, "gc", in.unit()) != class_h)
        throw BootstrapError("bootstrap: class is not an instance of itself");
    if (in.send(object_h, "gc", in.unit()) != class_h)
        throw BootstrapError("bootstrap: object is not an instance of class");
    {
        Environment flat = getallenv_graph(in, *gclass);
        for (const char* key : {"supers", "ivars", "menv", "class"})
            if (!flat.binds(key))
                throw BootstrapError(std::string("bootstrap: class lacks ivar '") + key + "'");
    }

    // AS emulation: a method that derives the implicit metaclass by asking the
    // superclasses for their classes, and the pair of classes carrying it.
    b.asnew = in.prim("asnew", 2, [class_h](Interp& in, const std::vector<Value>& a) {
        meth_ctx(in, a[0], "asnew");
        if (!is<TupleV>(a[1]) || as<TupleV>(a[1]).elems.size() != 4)
            throw RuntimeError("asnew: expected (class methods, supers, ivars, menv)");
        const auto& t = as<TupleV>(a[1]).elems;
        if (!is<ListV>(t[1])) throw RuntimeError("asnew: supers is not a list");
        std::vector<Value> metas;
        for (Value c : as<ListV>(t[1]).elems) metas.push_back(in.send(c, "gc", in.unit()));
        Value meta = in.send(class_h, "new", in.list({in.list(std::move(metas)),
                                                      in.list({}), t[0]}));
        return in.send(meta, "new", in.list({t[1], t[2], t[3]}));
    });
    b.asm_class = in.send(class_h, "new",
                          in.list({in.list({class_h}), in.list({}),
                                   in.env_value(in.env_bind("new", b.asnew))}));
    b.asc = in.send(b.asm_class, "new",
                    in.list({in.list({b.asm_class}), in.list({}), in.env_value(Environment{})}));
    return b;
}

} // namespace braid
