#include "braid/interp.hpp"

#include <iostream>
#include <set>
#include <sstream>

#include "braid/as_braid.hpp"
#include "braid/asmi_braid.hpp"
#include "braid/asmirs_braid.hpp"
#include "braid/desugar.hpp"
#include "braid/parser.hpp"

namespace braid {

Interp::Interp(Config cfg) : cfg_(std::move(cfg)) {
    eps_ = alloc_node(EpsV{});
    null_ = alloc_node(NullV{});
    nullclass_ = alloc_node(NullClassV{});
    unit_ = alloc_node(TupleV{});
    install_prims(*this);
}

Interp::~Interp() = default;

std::ostream& Interp::out() const { return cfg_.out ? *cfg_.out : std::cout; }

// ---- store -----------------------------------------------------------------

Loc Interp::alloc(Value v) {
    store_.push_back(v);
    return static_cast<Loc>(store_.size() - 1);
}

Value Interp::load(Loc l) const { return store_[l]; }

void Interp::store_set(Loc l, Value v) { store_[l] = v; }

// ---- construction ------------------------------------------------------------

Value Interp::alloc_node(ValueVariant v) {
    nodes_.push_back(ValueNode{std::move(v)});
    return &nodes_.back();
}

Value Interp::num(std::int64_t n) { return alloc_node(NumV{n}); }
Value Interp::str(std::string s) { return alloc_node(StrV{std::move(s)}); }
Value Interp::boolean(bool b) { return alloc_node(BoolV{b}); }

Value Interp::tuple(std::vector<Value> elems) {
    if (elems.empty()) return unit_;
    return alloc_node(TupleV{std::move(elems)});
}

Value Interp::unit() { return unit_; }
Value Interp::list(std::vector<Value> elems) { return alloc_node(ListV{std::move(elems)}); }

Value Interp::set_of(std::vector<Value> elems) {
    std::vector<Value> dedup;
    for (Value v : elems) {
        bool seen = false;
        for (Value d : dedup)
            if (value_equal(v, d)) { seen = true; break; }
        if (!seen) dedup.push_back(v);
    }
    return alloc_node(SetV{std::move(dedup)});
}

Value Interp::cons_value(std::string tag, Value payload) {
    return alloc_node(ConsV{std::move(tag), payload});
}

Value Interp::closure(std::optional<std::string> param, KExprPtr body, Environment env) {
    return alloc_node(ClosureV{std::move(param), std::move(body), std::move(env)});
}

Value Interp::prim(std::string name, int arity,
                   std::function<Value(Interp&, const std::vector<Value>&)> fn) {
    prim_defs_.push_back(PrimDef{std::move(name), arity, std::move(fn)});
    return alloc_node(PrimV{&prim_defs_.back(), {}});
}

Value Interp::env_value(Environment e) { return alloc_node(EnvV{std::move(e)}); }
Value Interp::hole() { return alloc_node(HoleV{}); }
Value Interp::loc_value(Loc l) { return alloc_node(LocV{l}); }

Value Interp::as_object(AsObjectNode n) {
    as_nodes_.push_back(std::move(n));
    return alloc_node(AsObjV{&as_nodes_.back()});
}

GraphData* Interp::graph() {
    graphs_.emplace_back();
    return &graphs_.back();
}

GraphData* Interp::graph_copy(const GraphData& g) {
    graphs_.push_back(g);
    return &graphs_.back();
}

Value Interp::graph_value(GraphData* g) { return alloc_node(GraphV{g}); }

Value Interp::node_value(NodeAddr addr, Value ivars, Value meths, bool marked) {
    return alloc_node(NodeV{addr, ivars, meths, marked});
}

Value Interp::refl_object(Value cls, Value rep) {
    refls_.push_back(ReflData{cls, rep});
    return alloc_node(ReflV{&refls_.back()});
}

// ---- environments ---------------------------------------------------------------

Environment Interp::env_bind(const std::string& key, Value v) {
    Environment e;
    e.append(key, alloc(v));
    return e;
}

Value Interp::env_lookup(const Environment& e, std::string_view key) {
    auto loc = e.lookup(key);
    return loc ? load(*loc) : eps_;
}

void Interp::env_assign(const Environment& e, std::string_view key, Value v) {
    auto loc = e.lookup(key);
    if (!loc)
        throw RuntimeError("assignment to missing instance variable '" + std::string(key) + "'");
    store_set(*loc, v);
}

// ---- evaluation --------------------------------------------------------------------

namespace {
bool is_constructor_name(const std::string& name) {
    return !name.empty() && name[0] >= 'A' && name[0] <= 'Z';
}
} // namespace

Value Interp::evaluate(const KExpr& e, const Environment& env) {
    return std::visit(
        [&](const auto& n) -> Value {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, KIdent>) {
                if (is_constructor_name(n.name)) {
                    std::string tag = n.name;
                    return prim("ctor:" + tag, 1, [tag](Interp& in, const std::vector<Value>& a) {
                        return in.cons_value(tag, a[0]);
                    });
                }
                auto loc = env.lookup(n.name);
                if (!loc) throw RuntimeError("unbound identifier '" + n.name + "'");
                return load(*loc);
            } else if constexpr (std::is_same_v<T, KNum>) {
                return num(n.n);
            } else if constexpr (std::is_same_v<T, KStr>) {
                return str(n.s);
            } else if constexpr (std::is_same_v<T, KLam>) {
                return closure(n.param, n.body, env);
            } else if constexpr (std::is_same_v<T, KThunk>) {
                return closure(std::nullopt, n.body, env);
            } else if constexpr (std::is_same_v<T, KApp>) {
                Value f = evaluate(*n.fn, env);
                // `lhs := rhs`: the left operand names an updateable location,
                // not a value, so the assignment primitive captures it here.
                if (is<PrimV>(f) && as<PrimV>(f).def == assign_def_ &&
                    as<PrimV>(f).applied.empty()) {
                    const auto* id = std::get_if<KIdent>(&n.arg->v);
                    if (!id)
                        throw RuntimeError("assignment target must be an identifier");
                    auto loc = env.lookup(id->name);
                    if (!loc)
                        throw RuntimeError("assignment target '" + id->name + "' is unbound");
                    return alloc_node(PrimV{assign_def_, {loc_value(*loc)}});
                }
                Value a = evaluate(*n.arg, env);
                return apply(f, a);
            } else if constexpr (std::is_same_v<T, KIf>) {
                Value c = evaluate(*n.cond, env);
                if (!is<BoolV>(c))
                    throw RuntimeError("condition is not a boolean: " + print_value(c));
                return as<BoolV>(c).b ? evaluate(*n.then_e, env) : evaluate(*n.else_e, env);
            } else if constexpr (std::is_same_v<T, KTuple>) {
                if (n.elems.empty()) return unit_;
                std::vector<Value> elems;
                elems.reserve(n.elems.size());
                for (const auto& el : n.elems) elems.push_back(evaluate(*el, env));
                return tuple(std::move(elems));
            } else if constexpr (std::is_same_v<T, KSeq>) {
                evaluate(*n.first, env);
                return evaluate(*n.second, env);
            }
        },
        e.v);
}

Value Interp::apply(Value f, Value arg) {
    DepthGuard guard(*this);
    if (is<ClosureV>(f)) {
        const auto& c = as<ClosureV>(f);
        if (!c.param) return evaluate(*c.body, c.env);  // thunk: argument discarded
        Environment env = c.env;
        env.append(*c.param, alloc(arg));
        return evaluate(*c.body, env);
    }
    if (is<PrimV>(f)) {
        const auto& p = as<PrimV>(f);
        std::vector<Value> args = p.applied;
        args.push_back(arg);
        if (static_cast<int>(args.size()) < p.def->arity)
            return alloc_node(PrimV{p.def, std::move(args)});
        return p.def->fn(*this, args);
    }
    throw RuntimeError("cannot apply a non-function value: " + print_value(f));
}

Value Interp::fix(Value f) {
    Value hole_v = hole();
    Value r = apply(f, hole_v);
    if (r == hole_v) throw RuntimeError("fixpoint produced no value");
    hole_v->v = r->v;  // back-patch: self references now reach the result
    return hole_v;
}

// ---- top level ------------------------------------------------------------------------

Value Interp::run_item(const KItem& item) {
    if (const auto* let = std::get_if<KLetGroup>(&item)) {
        // Recursive group: every name is pre-bound to a fresh location holding
        // null, then each right-hand side is evaluated and assigned in order.
        std::vector<Loc> locs;
        for (const auto& name : let->names) {
            Loc l = alloc(null_);
            globals_.append(name, l);
            locs.push_back(l);
        }
        for (std::size_t i = 0; i < let->exprs.size(); ++i)
            store_set(locs[i], evaluate(*let->exprs[i], globals_));
        return nullptr;
    }
    return evaluate(*std::get<KEval>(item).expr, globals_);
}

void Interp::run_program(const KProgram& p) {
    for (const auto& item : p.items) {
        Value v = run_item(item);
        if (v) out() << print_value(v) << "\n";
    }
}

void Interp::run_source(std::string_view text) {
    SProgram sp = parse_program(text);
    KProgram kp = desugar(sp);
    run_program(kp);
}

Value Interp::eval_expr_source(std::string_view text) {
    SExprPtr se = parse_expr(text);
    KExprPtr ke = desugar_expr(*se);
    return evaluate(*ke, globals_);
}

void Interp::bind_global(const std::string& name, Value v) {
    globals_.append(name, alloc(v));
}

// ---- dispatch ------------------------------------------------------------------------

Value Interp::send(Value receiver, const std::string& selector, Value arg) {
    if (is<AsObjV>(receiver)) return send_as(*this, receiver, selector, arg);
    if (is<GraphV>(receiver)) return send_asmi(*this, receiver, selector, arg);
    if (is<ReflV>(receiver)) return send_rs(*this, receiver, selector, arg);
    throw RuntimeError("send: receiver is not an object: " + print_value(receiver));
}

// ---- braids --------------------------------------------------------------------------

AsBootstrap& Interp::as_braid() {
    if (!as_) as_ = std::make_unique<AsBootstrap>(bootstrap_as(*this));
    return *as_;
}

AsmiBootstrap& Interp::asmi_braid() {
    if (!asmi_) asmi_ = std::make_unique<AsmiBootstrap>(bootstrap_asmi(*this));
    return *asmi_;
}

AsmirsBootstrap& Interp::asmirs_braid() {
    if (!asmirs_) asmirs_ = std::make_unique<AsmirsBootstrap>(bootstrap_asmirs(*this));
    return *asmirs_;
}

void Interp::load_braid(Braid b) {
    switch (b) {
        case Braid::None:
            break;
        case Braid::As: {
            AsBootstrap& as = as_braid();
            bind_global("object", as.object);
            bind_global("oc", as.oc);
            bind_global("cd", as.cd);
            bind_global("cdc", as.cdc);
            bind_global("mc", as.mc);
            bind_global("mcc", as.mcc);
            bind_global("class", as.klass);
            bind_global("cc", as.cc);
            break;
        }
        case Braid::Asmi: {
            AsmiBootstrap& mi = asmi_braid();
            bind_global("object", mi.object);
            bind_global("class", mi.klass);
            bind_global("asnew", mi.asnew);
            bind_global("asm", mi.asm_class);
            bind_global("asc", mi.asc);
            break;
        }
        case Braid::Asmirs: {
            AsmirsBootstrap& rs = asmirs_braid();
            bind_global("object", rs.object);
            bind_global("class", rs.klass);
            bind_global("c", rs.strategy_c);
            break;
        }
    }
}

// ---- printing / tracing -----------------------------------------------------------------

namespace {

struct ValuePrinter {
    const Interp& in;
    std::set<const ValueNode*> visiting;
    std::ostringstream os;

    void print(Value v) {
        if (!v) {
            os << "<nothing>";
            return;
        }
        if (visiting.count(v)) {
            os << "...";
            return;
        }
        visiting.insert(v);
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, NumV>) {
                    os << n.n;
                } else if constexpr (std::is_same_v<T, StrV>) {
                    os << '"';
                    for (char c : n.s) {
                        if (c == '"') os << "\\\"";
                        else if (c == '\\') os << "\\\\";
                        else os << c;
                    }
                    os << '"';
                } else if constexpr (std::is_same_v<T, BoolV>) {
                    os << (n.b ? "true" : "false");
                } else if constexpr (std::is_same_v<T, TupleV>) {
                    os << "(";
                    for (std::size_t i = 0; i < n.elems.size(); ++i) {
                        if (i) os << ", ";
                        print(n.elems[i]);
                    }
                    os << ")";
                } else if constexpr (std::is_same_v<T, ListV>) {
                    os << "[";
                    for (std::size_t i = 0; i < n.elems.size(); ++i) {
                        if (i) os << ", ";
                        print(n.elems[i]);
                    }
                    os << "]";
                } else if constexpr (std::is_same_v<T, SetV>) {
                    os << "{|";
                    for (std::size_t i = 0; i < n.elems.size(); ++i) {
                        if (i) os << ", ";
                        print(n.elems[i]);
                    }
                    os << "|}";
                } else if constexpr (std::is_same_v<T, ConsV>) {
                    os << n.tag << "(";
                    print(n.payload);
                    os << ")";
                } else if constexpr (std::is_same_v<T, EnvV>) {
                    // flattened, rightmost-wins, keys in first-occurrence order
                    auto keys = n.env.domain();
                    if (keys.empty()) {
                        os << "{}";
                    } else {
                        os << "{";
                        for (std::size_t i = 0; i < keys.size(); ++i) {
                            if (i) os << ", ";
                            os << '"' << keys[i] << "\" |-> ";
                            print(in.load(*n.env.lookup(keys[i])));
                        }
                        os << "}";
                    }
                } else if constexpr (std::is_same_v<T, ClosureV> || std::is_same_v<T, PrimV>) {
                    os << "<fn>";
                } else if constexpr (std::is_same_v<T, EpsV>) {
                    os << "eps";
                } else if constexpr (std::is_same_v<T, NullV>) {
                    os << "null";
                } else if constexpr (std::is_same_v<T, NullClassV>) {
                    os << "<nullclass>";
                } else if constexpr (std::is_same_v<T, HoleV>) {
                    os << "<hole>";
                } else if constexpr (std::is_same_v<T, LocV>) {
                    os << "<loc " << n.loc << ">";
                } else if constexpr (std::is_same_v<T, NodeV>) {
                    os << "<node " << n.addr << ">";
                } else {
                    os << "<object>";
                }
            },
            v->v);
        visiting.erase(v);
    }
};

} // namespace

std::string Interp::print_value(Value v) const {
    ValuePrinter p{*this};
    p.print(v);
    return p.os.str();
}

int Interp::value_id(Value v) {
    auto [it, inserted] = ids_.emplace(v, next_id_);
    if (inserted) next_id_++;
    return it->second;
}

void Interp::trace_send_line(Value recv, const std::string& sel, const std::string& via,
                             const std::string& node) {
    if (!cfg_.trace_send) return;
    std::ostream& os = cfg_.trace_out ? *cfg_.trace_out : out();
    os << "#send recv=" << value_id(recv) << " sel=" << sel << " via=" << via << " node=" << node
       << "\n";
}

} // namespace braid
