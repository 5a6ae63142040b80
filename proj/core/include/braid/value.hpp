#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace braid {

class Interp;
struct ValueNode;

// Values are pointers into an interpreter-owned arena. Nothing is reclaimed
// before the interpreter dies, which makes the cyclic structures produced by
// the knot-tying fixpoint harmless.
using Value = ValueNode*;

// A location is an index into the interpreter's store. Locations are shared,
// never implicitly copied: copying an environment copies (key, location)
// pairs, so every copy observes the same cell.
using Loc = std::uint32_t;

// Ordered (key, location) bindings. Lookup of a multiply-bound key returns the
// rightmost binding; concatenation appends.
class Environment {
public:
    Environment() = default;

    void append(std::string key, Loc loc) { binds_.emplace_back(std::move(key), loc); }

    static Environment concat(const Environment& a, const Environment& b) {
        Environment r = a;
        r.binds_.insert(r.binds_.end(), b.binds_.begin(), b.binds_.end());
        return r;
    }

    std::optional<Loc> lookup(std::string_view key) const {
        for (auto it = binds_.rbegin(); it != binds_.rend(); ++it)
            if (it->first == key) return it->second;
        return std::nullopt;
    }

    bool binds(std::string_view key) const { return lookup(key).has_value(); }
    bool empty() const { return binds_.empty(); }
    std::size_t size() const { return binds_.size(); }

    // Keys in first-occurrence order, deduplicated.
    std::vector<std::string> domain() const {
        std::vector<std::string> keys;
        for (const auto& [k, _] : binds_) {
            bool seen = false;
            for (const auto& s : keys)
                if (s == k) { seen = true; break; }
            if (!seen) keys.push_back(k);
        }
        return keys;
    }

    const std::vector<std::pair<std::string, Loc>>& bindings() const { return binds_; }

private:
    std::vector<std::pair<std::string, Loc>> binds_;
};

struct KExpr;
using KExprPtr = std::shared_ptr<const KExpr>;

// ---------------------------------------------------------------------------
// Value payloads
// ---------------------------------------------------------------------------

struct NumV { std::int64_t n = 0; };
struct StrV { std::string s; };
struct BoolV { bool b = false; };
struct TupleV { std::vector<Value> elems; };  // arity 0 (the unit value) or >= 2
struct ListV { std::vector<Value> elems; };
struct SetV { std::vector<Value> elems; };    // insertion order, no duplicates
struct ConsV { std::string tag; Value payload = nullptr; };

struct ClosureV {
    std::optional<std::string> param;  // nullopt: a thunk, the argument is discarded
    KExprPtr body;
    Environment env;
};

struct PrimDef {
    std::string name;
    int arity = 1;
    std::function<Value(Interp&, const std::vector<Value>&)> fn;
};

struct PrimV {
    const PrimDef* def = nullptr;
    std::vector<Value> applied;  // partial arguments collected so far
};

struct EnvV { Environment env; };
struct EpsV {};        // the distinguished failure value
struct NullV {};       // the null initialization value
struct NullClassV {};  // pseudo superclass terminating single-inheritance chains
struct HoleV {};       // placeholder used while tying recursive knots
struct LocV { Loc loc = 0; };  // internal: a captured assignment target

// Single-inheritance object layer. An object is either the heart (is_null)
// or a layer whose super is the next innermost onion.
struct AsObjectNode {
    bool is_null = false;
    Environment ienv;
    Environment menv;
    Value super = nullptr;  // next innermost layer (unused when is_null)
    Value self = nullptr;   // the whole onion, identical at every layer
};
struct AsObjV { AsObjectNode* obj = nullptr; };

using NodeAddr = std::uint32_t;
using EdgeId = std::uint32_t;

// Object graph: nodes map addresses to payloads, edges carry source/target
// maps, and `order` is a partial order on addresses consulted when siblings
// are linearized.
struct GraphData {
    struct Node {
        Value ivars = nullptr;  // an environment for instances, a name list for class graphs
        Value meths = nullptr;  // method environment
        bool marked = false;
    };
    std::map<NodeAddr, Node> nodes;
    std::vector<EdgeId> edges;
    std::map<EdgeId, NodeAddr> src;
    std::map<EdgeId, NodeAddr> tgt;
    std::set<std::pair<NodeAddr, NodeAddr>> order;
};
struct GraphV { GraphData* g = nullptr; };

// A node snapshot as a first-class value; equality is by address.
struct NodeV {
    NodeAddr addr = 0;
    Value ivars = nullptr;
    Value meths = nullptr;
    bool marked = false;
};

// Reflective object: the class that created it plus an opaque representation
// (a graph for every representation shipped here).
struct ReflData {
    Value cls = nullptr;
    Value rep = nullptr;
};
struct ReflV { ReflData* o = nullptr; };

using ValueVariant = std::variant<NumV, StrV, BoolV, TupleV, ListV, SetV, ConsV, ClosureV,
                                  PrimV, EnvV, EpsV, NullV, NullClassV, HoleV, LocV, AsObjV,
                                  GraphV, NodeV, ReflV>;

struct ValueNode {
    ValueVariant v;
};

template <typename T>
bool is(Value x) { return x && std::holds_alternative<T>(x->v); }

template <typename T>
T& as(Value x) { return std::get<T>(x->v); }

template <typename T>
const T& as(const ValueNode* x) { return std::get<T>(x->v); }

// The decided equality: numbers, strings and booleans structurally; tuples and
// lists elementwise; sets as unordered collections; eps/null/nullclass as
// singleton kinds; closures, primitives, objects, graphs and nodes by
// identity; reflective objects by (class, rep) identity pair.
bool value_equal(Value a, Value b);

} // namespace braid
