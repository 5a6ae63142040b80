#include "braid/as_braid.hpp"

#include <map>

#include "braid/errors.hpp"
#include "braid/interp.hpp"

namespace braid {

namespace {

// Hidden method parameters: every method value is applied to (self, next, e)
// and then to the message argument.
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

} // namespace

Environment getallenv_as(Interp& in, Value o) {
    if (!is<AsObjV>(o))
        throw RuntimeError("getallenv: expected an object, got " + in.print_value(o));
    Environment acc;
    const AsObjectNode* node = as<AsObjV>(o).obj;
    while (!node->is_null) {
        acc = Environment::concat(acc, node->ienv);
        if (!is<AsObjV>(node->super)) throw RuntimeError("getallenv: corrupt object onion");
        node = as<AsObjV>(node->super).obj;
    }
    return acc;
}

Value mkobj(Interp& in, Value c, Value o) {
    Interp::DepthGuard guard(in);
    if (is<NullClassV>(c)) {
        AsObjectNode heart;
        heart.is_null = true;
        heart.self = o;
        return in.as_object(std::move(heart));
    }
    if (!is<AsObjV>(c)) throw RuntimeError("mkobj: expected a class, got " + in.print_value(c));

    Environment flat = getallenv_as(in, c);
    Value super = in.env_lookup(flat, "super");
    Value ivars = in.env_lookup(flat, "ivars");
    Value menv = in.env_lookup(flat, "menv");
    if (is<EpsV>(super) || is<EpsV>(ivars) || is<EpsV>(menv))
        throw RuntimeError("mkobj: malformed class (missing super/ivars/menv)");
    if (!is<ListV>(ivars)) throw RuntimeError("mkobj: class ivars is not a list of names");
    if (!is<EnvV>(menv)) throw RuntimeError("mkobj: class menv is not an environment");

    AsObjectNode layer;
    for (Value name : as<ListV>(ivars).elems) {
        if (!is<StrV>(name)) throw RuntimeError("mkobj: ivar name is not a string");
        layer.ienv.append(as<StrV>(name).s, in.alloc(in.null_value()));
    }
    layer.menv = as<EnvV>(menv).env;
    layer.super = mkobj(in, super, o);
    layer.self = o;
    return in.as_object(std::move(layer));
}

Value send_as(Interp& in, Value receiver, const std::string& selector, Value arg) {
    Interp::DepthGuard guard(in);
    if (!is<AsObjV>(receiver))
        throw RuntimeError("send: receiver is not an object: " + in.print_value(receiver));
    Value cur = receiver;
    int layer_idx = 0;
    while (true) {
        const AsObjectNode* node = as<AsObjV>(cur).obj;
        if (node->is_null) {
            if (selector == "dnu")
                throw RuntimeError("no dnu handler: message " + in.print_value(arg) +
                                   " fell through an object with no \"dnu\" method");
            return send_as(in, node->self, "dnu",
                           in.tuple({in.str(selector), arg}));
        }
        if (auto loc = node->menv.lookup(selector)) {
            Value method = in.load(*loc);
            Environment e = Environment::concat(node->ienv, getallenv_as(in, node->super));
            in.trace_send_line(receiver, selector, "as", "layer" + std::to_string(layer_idx));
            Value hidden = in.tuple({node->self, node->super, in.env_value(e)});
            return in.apply(in.apply(method, hidden), arg);
        }
        cur = node->super;
        layer_idx++;
        if (!is<AsObjV>(cur)) throw RuntimeError("send: corrupt object onion");
    }
}

std::vector<AsLayerView> as_layers(Value o) {
    std::vector<AsLayerView> out;
    if (!is<AsObjV>(o)) return out;
    const AsObjectNode* node = as<AsObjV>(o).obj;
    while (!node->is_null) {
        out.push_back(AsLayerView{node->ienv.domain(), node->menv.domain(), &node->ienv,
                                  &node->menv});
        node = as<AsObjV>(node->super).obj;
    }
    return out;
}

namespace {

struct ClassSpec {
    std::string super;
    std::string meta;
    std::vector<std::string> ivars;
    std::string menu;  // key into the method-suite table
};

} // namespace

AsBootstrap bootstrap_as(Interp& in) {
    AsBootstrap b;

    // placeholders for the eight classes; everything below references through
    // them and they are back-patched once the onions exist
    std::map<std::string, Value> hole = {
        {"object", in.hole()}, {"oc", in.hole()},  {"cd", in.hole()}, {"cdc", in.hole()},
        {"mc", in.hole()},     {"mcc", in.hole()}, {"class", in.hole()}, {"cc", in.hole()},
    };
    Value mc_hole = hole["mc"];

    // builtin method functions
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
    b.cdinit = in.prim("cdinit", 2, [](Interp& in, const std::vector<Value>& a) {
        MethCtx ctx = meth_ctx(in, a[0], "cdinit");
        auto args = need_init_list(in, a[1], "cdinit");
        if (args.size() < 3)
            throw RuntimeError("cdinit: expected [super, ivars, menv] ++ rest");
        in.env_assign(ctx.env, "super", args[0]);
        in.env_assign(ctx.env, "ivars", args[1]);
        in.env_assign(ctx.env, "menv", args[2]);
        std::vector<Value> rest(args.begin() + 3, args.end());
        return in.send(ctx.next, "init", in.list(std::move(rest)));
    });
    b.cdnew = in.prim("cdnew", 2, [](Interp& in, const std::vector<Value>& a) {
        MethCtx ctx = meth_ctx(in, a[0], "cdnew");
        auto args = need_init_list(in, a[1], "cdnew");
        // Y(mkobj(self)): the instance's self component is the instance itself
        Value knot = in.hole();
        Value built = mkobj(in, ctx.self, knot);
        knot->v = built->v;
        args.push_back(ctx.self);
        return in.send(knot, "init", in.list(std::move(args)));
    });
    b.metasub = in.prim("metasub", 2, [mc_hole](Interp& in, const std::vector<Value>& a) {
        MethCtx ctx = meth_ctx(in, a[0], "metasub");
        return in.send(mc_hole, "new",
                       in.list({ctx.self, in.list({}), a[1]}));
    });
    b.classsub = in.prim("classsub", 2, [](Interp& in, const std::vector<Value>& a) {
        MethCtx ctx = meth_ctx(in, a[0], "classsub");
        if (!is<TupleV>(a[1]) || as<TupleV>(a[1]).elems.size() != 3)
            throw RuntimeError("classsub: \"subclass\" expects (class methods, ivars, menv)");
        const auto& t = as<TupleV>(a[1]).elems;
        Value cls = in.env_lookup(ctx.env, "class");
        if (is<EpsV>(cls)) throw RuntimeError("classsub: receiver has no class variable");
        Value meta = in.send(cls, "subclass", t[0]);
        return in.send(meta, "new", in.list({ctx.self, t[1], t[2]}));
    });

    // predefined method suites and the class-description ivar list
    Environment om_env = Environment::concat(in.env_bind("init", b.objinit),
                                             in.env_bind("dnu", b.objdnu));
    Environment cdm_env = Environment::concat(in.env_bind("new", b.cdnew),
                                              in.env_bind("init", b.cdinit));
    Environment mm_env = in.env_bind("subclass", b.metasub);
    Environment cm_env = in.env_bind("subclass", b.classsub);
    b.om = in.env_value(om_env);
    b.cdm = in.env_value(cdm_env);
    b.mm = in.env_value(mm_env);
    b.cm = in.env_value(cm_env);
    b.cdv = in.list({in.str("super"), in.str("ivars"), in.str("menv")});

    const std::map<std::string, Environment> menus = {
        {"om", om_env}, {"cdm", cdm_env}, {"mm", mm_env}, {"cm", cm_env}, {"none", Environment{}},
    };
    const std::map<std::string, ClassSpec> specs = {
        {"object", {"nullclass", "oc", {"class"}, "om"}},
        {"cd", {"object", "cdc", {"super", "ivars", "menv"}, "cdm"}},
        {"mc", {"cd", "mcc", {}, "mm"}},
        {"class", {"cd", "cc", {}, "cm"}},
        {"oc", {"class", "mc", {}, "none"}},
        {"cdc", {"oc", "mc", {}, "none"}},
        {"mcc", {"cdc", "mc", {}, "none"}},
        {"cc", {"cdc", "mc", {}, "none"}},
    };

    auto super_value = [&](const std::string& name) -> Value {
        return name == "nullclass" ? in.nullclass() : hole.at(name);
    };

    // Builds the onion for one class: one layer per class in its metaclass's
    // superclass chain, then the chain-position assignments objinit/cdinit
    // would have performed.
    auto build = [&](const std::string& name) {
        const ClassSpec& spec = specs.at(name);
        std::vector<std::string> chain;
        for (std::string cur = spec.meta; cur != "nullclass"; cur = specs.at(cur).super)
            chain.push_back(cur);

        Value self = hole.at(name);
        AsObjectNode heart;
        heart.is_null = true;
        heart.self = self;
        Value prev = in.as_object(std::move(heart));

        AsObjectNode* cd_layer = nullptr;
        AsObjectNode* object_layer = nullptr;
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            const ClassSpec& layer_spec = specs.at(*it);
            AsObjectNode layer;
            for (const auto& ivar : layer_spec.ivars)
                layer.ienv.append(ivar, in.alloc(in.null_value()));
            layer.menv = menus.at(layer_spec.menu);
            layer.super = prev;
            layer.self = self;
            prev = in.as_object(std::move(layer));
            AsObjectNode* placed = as<AsObjV>(prev).obj;
            if (*it == "cd") cd_layer = placed;
            if (*it == "object") object_layer = placed;
        }
        if (!cd_layer || !object_layer)
            throw BootstrapError("class '" + name + "' lacks a cd or object layer");

        in.env_assign(cd_layer->ienv, "super", super_value(spec.super));
        std::vector<Value> names;
        for (const auto& ivar : spec.ivars) names.push_back(in.str(ivar));
        in.env_assign(cd_layer->ienv, "ivars", in.list(std::move(names)));
        in.env_assign(cd_layer->ienv, "menv", in.env_value(menus.at(spec.menu)));
        in.env_assign(object_layer->ienv, "class", hole.at(spec.meta));

        hole.at(name)->v = prev->v;
    };

    for (const char* name : {"object", "cd", "mc", "class", "oc", "cdc", "mcc", "cc"})
        build(name);

    b.object = hole["object"];
    b.oc = hole["oc"];
    b.cd = hole["cd"];
    b.cdc = hole["cdc"];
    b.mc = hole["mc"];
    b.mcc = hole["mcc"];
    b.klass = hole["class"];
    b.cc = hole["cc"];

    // consistency checks: every class exposes exactly the class-shaped state
    // and the standard class behaviour
    for (const auto& [name, v] : hole) {
        Environment flat = getallenv_as(in, v);
        for (const char* key : {"super", "ivars", "menv", "class"})
            if (!flat.binds(key))
                throw BootstrapError("bootstrap: class '" + name + "' lacks ivar '" + key + "'");
        std::vector<std::string> selectors;
        for (const auto& layer : as_layers(v))
            for (const auto& m : layer.menv_domain) selectors.push_back(m);
        for (const char* sel : {"new", "init", "subclass", "dnu"}) {
            bool found = false;
            for (const auto& s : selectors)
                if (s == sel) { found = true; break; }
            if (!found)
                throw BootstrapError("bootstrap: class '" + name + "' cannot answer '" + sel + "'");
        }
    }
    return b;
}

} // namespace braid
