#include "braid/value.hpp"

#include "braid/errors.hpp"

namespace braid {

namespace {

bool equal_rec(Value a, Value b, int depth) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (depth > 512) throw RuntimeError("equality recursion too deep");
    if (a->v.index() != b->v.index()) return false;

    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, NumV>) {
                return x.n == as<NumV>(b).n;
            } else if constexpr (std::is_same_v<T, StrV>) {
                return x.s == as<StrV>(b).s;
            } else if constexpr (std::is_same_v<T, BoolV>) {
                return x.b == as<BoolV>(b).b;
            } else if constexpr (std::is_same_v<T, TupleV> || std::is_same_v<T, ListV>) {
                const auto& ye = std::is_same_v<T, TupleV> ? as<TupleV>(b).elems : as<ListV>(b).elems;
                if (x.elems.size() != ye.size()) return false;
                for (std::size_t i = 0; i < x.elems.size(); ++i)
                    if (!equal_rec(x.elems[i], ye[i], depth + 1)) return false;
                return true;
            } else if constexpr (std::is_same_v<T, SetV>) {
                const auto& ye = as<SetV>(b).elems;
                if (x.elems.size() != ye.size()) return false;
                for (Value ea : x.elems) {
                    bool found = false;
                    for (Value eb : ye)
                        if (equal_rec(ea, eb, depth + 1)) { found = true; break; }
                    if (!found) return false;
                }
                return true;
            } else if constexpr (std::is_same_v<T, ConsV>) {
                const auto& y = as<ConsV>(b);
                return x.tag == y.tag && equal_rec(x.payload, y.payload, depth + 1);
            } else if constexpr (std::is_same_v<T, EnvV>) {
                const auto& y = as<EnvV>(b);
                const auto& xb = x.env.bindings();
                const auto& yb = y.env.bindings();
                if (xb.size() != yb.size()) return false;
                for (std::size_t i = 0; i < xb.size(); ++i)
                    if (xb[i] != yb[i]) return false;
                return true;
            } else if constexpr (std::is_same_v<T, EpsV> || std::is_same_v<T, NullV> ||
                                 std::is_same_v<T, NullClassV>) {
                return true;  // singleton kinds
            } else if constexpr (std::is_same_v<T, LocV>) {
                return x.loc == as<LocV>(b).loc;
            } else if constexpr (std::is_same_v<T, AsObjV>) {
                return x.obj == as<AsObjV>(b).obj;
            } else if constexpr (std::is_same_v<T, GraphV>) {
                return x.g == as<GraphV>(b).g;
            } else if constexpr (std::is_same_v<T, NodeV>) {
                return x.addr == as<NodeV>(b).addr;
            } else if constexpr (std::is_same_v<T, ReflV>) {
                // A reflective object is its (class, rep) pair: delivery keeps
                // rewrapping receivers, so wrapper allocation identity would
                // make every object unequal to itself.
                const auto& y = as<ReflV>(b);
                return x.o->rep == y.o->rep && equal_rec(x.o->cls, y.o->cls, depth + 1);
            } else {
                return false;  // closures, prims, holes: identity only
            }
        },
        a->v);
}

} // namespace

bool value_equal(Value a, Value b) { return equal_rec(a, b, 0); }

} // namespace braid
