#include "braid/asmirs_braid.hpp"

#include "braid/asmi_braid.hpp"
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

Value need_refl(Interp& in, Value o, const char* who) {
    if (!is<ReflV>(o))
        throw RuntimeError(std::string(who) + ": expected a reflective object, got " +
                           in.print_value(o));
    return o;
}

Value eps_triple(Interp& in) { return in.tuple({in.eps(), in.eps(), in.eps()}); }

Value send_rs_impl(Interp& in, Value o, const std::string& sel, Value arg, int hops);

// The default delivery service for graph-represented objects. The node order
// comes from sending "on" to the receiver's class, which is the hook
// programmer-defined strategies redefine.
Value classsend_body(Interp& in, Value o, const std::string& n, Value v) {
    need_refl(in, o, "classsend");
    Value cls = as<ReflV>(o).o->cls;
    Value rep = as<ReflV>(o).o->rep;
    Value ordv = send_rs_impl(in, cls, "on", o, 0);
    if (!is<ListV>(ordv))
        throw RuntimeError("classsend: \"on\" did not return a node sequence, got " +
                           in.print_value(ordv));
    const auto& order = as<ListV>(ordv).elems;

    Value hit = nullptr;
    for (Value nodev : order) {
        if (!is<NodeV>(nodev))
            throw RuntimeError("classsend: \"on\" returned a non-node element");
        Value meths = as<NodeV>(nodev).meths;
        if (is<EnvV>(meths) && as<EnvV>(meths).env.binds(n)) {
            hit = nodev;
            break;
        }
    }
    if (!hit) {
        if (n == "dnu")
            throw RuntimeError("no dnu handler: message " + in.print_value(v) +
                               " fell through an object with no \"dnu\" method");
        Value receiver = in.refl_object(cls, unmark(in, rep));
        return send_rs_impl(in, receiver, "dnu", in.tuple({in.str(n), v}), 0);
    }

    Value marked = rep;
    for (Value nodev : order) {
        marked = mark_node(in, marked, as<NodeV>(nodev).addr);
        if (nodev == hit) break;
    }
    Value o1 = in.refl_object(cls, marked);
    Value o2 = in.refl_object(cls, unmark(in, rep));

    Environment e;
    bool from_hit = false;
    for (Value nodev : order) {
        if (nodev == hit) from_hit = true;
        if (!from_hit) continue;
        Value ivars = as<NodeV>(nodev).ivars;
        if (is<EnvV>(ivars)) e = Environment::concat(e, as<EnvV>(ivars).env);
    }

    Value method = in.env_lookup(as<EnvV>(as<NodeV>(hit).meths).env, n);
    in.trace_send_line(o, n, "classsend", std::to_string(as<NodeV>(hit).addr));
    Value hidden = in.tuple({o2, o1, in.env_value(e)});
    return in.apply(in.apply(method, hidden), v);
}

Value send_rs_impl(Interp& in, Value o, const std::string& sel, Value arg, int hops) {
    if (hops >= in.config().depth_limit)
        throw RuntimeError("ill-formed configuration: classof chain does not reach class");
    Interp::DepthGuard guard(in);
    need_refl(in, o, "send");
    if (!in.rs_class)
        throw RuntimeError("ill-formed configuration: no reflective class system loaded");
    Value cls = as<ReflV>(o).o->cls;
    if (value_equal(cls, in.rs_class)) {
        if (sel == "on") {
            in.trace_send_line(o, sel, "bottom-out", "-");
            return in.apply(in.apply(in.rs_classon, eps_triple(in)), arg);
        }
        if (sel == "send") {
            in.trace_send_line(o, sel, "bottom-out", "-");
            return in.apply(in.apply(in.rs_classsend, eps_triple(in)), arg);
        }
    }
    in.trace_send_line(o, sel, "meta", "-");
    return send_rs_impl(in, cls, "send", in.tuple({o, in.str(sel), arg}), hops + 1);
}

} // namespace

Value classof(Interp& in, Value o) {
    need_refl(in, o, "classof");
    return as<ReflV>(o).o->cls;
}

Value repof(Interp& in, Value o) {
    need_refl(in, o, "repof");
    return as<ReflV>(o).o->rep;
}

Value send_rs(Interp& in, Value receiver, const std::string& selector, Value arg) {
    return send_rs_impl(in, receiver, selector, arg, 0);
}

AsmirsBootstrap bootstrap_asmirs(Interp& in) {
    AsmirsBootstrap b;

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
    b.classinit = in.prim("classinit", 2, [](Interp& in, const std::vector<Value>& a) {
        MethCtx ctx = meth_ctx(in, a[0], "classinit");
        if (!is<ListV>(a[1]))
            throw RuntimeError("classinit: expected [supers, ivars, menv] ++ rest");
        auto args = as<ListV>(a[1]).elems;
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
        if (!is<ListV>(a[1]))
            throw RuntimeError("classnew: \"new\" expects a list of initialisation arguments");
        auto args = as<ListV>(a[1]).elems;
        Value self = ctx.self;
        Value inst = instantiate(in, repof(in, self));
        Value wrapped = in.refl_object(self, inst);
        args.push_back(self);
        return in.send(wrapped, "init", in.list(std::move(args)));
    });
    b.classon = in.prim("classon", 2, [](Interp& in, const std::vector<Value>& a) {
        return order_value(in, repof(in, a[1]), Collapse::Final);
    });
    b.classsend = in.prim("classsend", 2, [](Interp& in, const std::vector<Value>& a) {
        if (!is<TupleV>(a[1]) || as<TupleV>(a[1]).elems.size() != 3)
            throw RuntimeError("classsend: expected a (receiver, selector, argument) triple");
        const auto& t = as<TupleV>(a[1]).elems;
        if (!is<StrV>(t[1])) throw RuntimeError("classsend: selector is not a string");
        return classsend_body(in, t[0], as<StrV>(t[1]).s, t[2]);
    });

    // the primitive's built-in knowledge of how `class` delivers
    in.rs_class = class_h;
    in.rs_classon = b.classon;
    in.rs_classsend = b.classsend;

    Environment om_env = Environment::concat(in.env_bind("init", b.objinit),
                                             in.env_bind("dnu", b.objdnu));
    Environment cm_env = Environment::concat(
        Environment::concat(in.env_bind("on", b.classon), in.env_bind("new", b.classnew)),
        Environment::concat(in.env_bind("send", b.classsend), in.env_bind("init", b.classinit)));
    b.om = in.env_value(om_env);
    b.cm = in.env_value(cm_env);

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
    {
        Value v = in.refl_object(class_h, in.graph_value(gobject));
        object_h->v = v->v;
    }

    GraphData* gclass = make_instance_graph();
    assign(gclass, a_cls, "supers", in.list({object_h}));
    assign(gclass, a_cls, "ivars",
           in.list({in.str("supers"), in.str("ivars"), in.str("menv")}));
    assign(gclass, a_cls, "menv", b.cm);
    assign(gclass, a_obj, "class", class_h);
    {
        Value v = in.refl_object(class_h, in.graph_value(gclass));
        class_h->v = v->v;
    }

    b.object = object_h;
    b.klass = class_h;

    if (!value_equal(classof(in, b.klass), b.klass))
        throw BootstrapError("bootstrap: class is not an instance of itself");
    if (!value_equal(classof(in, b.object), b.klass))
        throw BootstrapError("bootstrap: object is not an instance of class");

    // example strategy: order nodes by first occurrence instead of final
    b.con = in.prim("con", 2, [](Interp& in, const std::vector<Value>& a) {
        return order_value(in, repof(in, a[1]), Collapse::First);
    });
    b.strategy_c = in.send(b.klass, "new",
                           in.list({in.list({b.klass}), in.list({}),
                                    in.env_value(in.env_bind("on", b.con))}));
    return b;
}

} // namespace braid
