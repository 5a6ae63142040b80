#include "braid/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "braid/errors.hpp"
#include "braid/interp.hpp"

namespace braid {

namespace {

const GraphData& need_graph(Interp& in, Value v, const char* who) {
    if (!is<GraphV>(v))
        throw RuntimeError(std::string(who) + ": expected an object graph, got " +
                           in.print_value(v));
    return *as<GraphV>(v).g;
}

const NodeV& need_node(Interp& in, Value v, const char* who) {
    if (!is<NodeV>(v))
        throw RuntimeError(std::string(who) + ": expected a graph node, got " + in.print_value(v));
    return as<NodeV>(v);
}

// Precedence relation used for consistency checks: the declared partial order
// plus the edge relation (an edge means "visited before").
std::set<std::pair<NodeAddr, NodeAddr>> full_relation(const GraphData& g) {
    std::set<std::pair<NodeAddr, NodeAddr>> rel = g.order;
    for (EdgeId e : g.edges) rel.emplace(g.src.at(e), g.tgt.at(e));
    return rel;
}

// Transitive closure; throws if the relation relates any node to itself.
std::set<std::pair<NodeAddr, NodeAddr>> closure_checked(
    const std::set<std::pair<NodeAddr, NodeAddr>>& rel, const char* who) {
    std::set<std::pair<NodeAddr, NodeAddr>> c = rel;
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::pair<NodeAddr, NodeAddr>> add;
        for (const auto& [a, b] : c)
            for (const auto& [b2, d] : c)
                if (b == b2 && !c.count({a, d})) add.emplace_back(a, d);
        if (!add.empty()) {
            grew = true;
            c.insert(add.begin(), add.end());
        }
    }
    for (const auto& [a, b] : c)
        if (a == b) throw RuntimeError(std::string(who) + ": contradictory node orders");
    return c;
}

} // namespace

Value nullgraph(Interp& in) { return in.graph_value(in.graph()); }

GraphData* graph_map_native(
    Interp& in, const GraphData& g,
    const std::function<GraphData::Node(NodeAddr, const GraphData::Node&)>& f) {
    GraphData* out = in.graph_copy(g);
    for (auto& [addr, node] : out->nodes) node = f(addr, node);
    return out;
}

Value graph_map(Interp& in, Value fn, Value g) {
    const GraphData& gd = need_graph(in, g, "gm");
    GraphData* out = graph_map_native(in, gd, [&](NodeAddr addr, const GraphData::Node& n) {
        Value nv = in.node_value(addr, n.ivars, n.meths, n.marked);
        Value r = in.apply(fn, nv);
        const NodeV& rn = need_node(in, r, "gm: node function");
        return GraphData::Node{rn.ivars, rn.meths, rn.marked};
    });
    return in.graph_value(out);
}

Value gmerge(Interp& in, Value g1, Value g2) {
    const GraphData& a = need_graph(in, g1, "gmerge");
    const GraphData& b = need_graph(in, g2, "gmerge");
    if (a.nodes.empty() && a.edges.empty()) return g2;
    if (b.nodes.empty() && b.edges.empty()) return g1;
    GraphData* out = in.graph_copy(a);
    for (const auto& [addr, node] : b.nodes) out->nodes.emplace(addr, node);
    for (EdgeId e : b.edges)
        if (std::find(out->edges.begin(), out->edges.end(), e) == out->edges.end())
            out->edges.push_back(e);
    out->src.insert(b.src.begin(), b.src.end());
    out->tgt.insert(b.tgt.begin(), b.tgt.end());
    out->order.insert(b.order.begin(), b.order.end());
    closure_checked(full_relation(*out), "gmerge");
    return in.graph_value(out);
}

std::vector<NodeAddr> root_addrs(const GraphData& g) {
    std::vector<NodeAddr> roots;
    for (const auto& [addr, _] : g.nodes) {
        bool incident = false;
        for (EdgeId e : g.edges)
            if (g.tgt.at(e) == addr) { incident = true; break; }
        if (!incident) roots.push_back(addr);
    }
    return roots;
}

std::vector<NodeAddr> target_addrs(const GraphData& g, NodeAddr n) {
    std::vector<NodeAddr> out;
    for (EdgeId e : g.edges) {
        if (g.src.at(e) != n) continue;
        NodeAddr t = g.tgt.at(e);
        if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    return out;
}

std::vector<NodeAddr> sort_addrs(const GraphData& g, std::vector<NodeAddr> addrs) {
    // linearize consistently with the declared order; ties by ascending address
    auto closed = closure_checked(g.order, "sort");
    std::sort(addrs.begin(), addrs.end());
    std::vector<NodeAddr> out;
    std::vector<NodeAddr> pending = std::move(addrs);
    while (!pending.empty()) {
        bool placed = false;
        for (std::size_t i = 0; i < pending.size(); ++i) {
            NodeAddr cand = pending[i];
            bool minimal = true;
            for (NodeAddr other : pending)
                if (other != cand && closed.count({other, cand})) { minimal = false; break; }
            if (minimal) {
                out.push_back(cand);
                pending.erase(pending.begin() + i);
                placed = true;
                break;
            }
        }
        if (!placed) throw RuntimeError("sort: cyclic node order");
    }
    return out;
}

namespace {

void walk(Interp& in, const GraphData& g, NodeAddr n, std::vector<NodeAddr>& out,
          std::vector<NodeAddr>& path) {
    if (std::find(path.begin(), path.end(), n) != path.end())
        throw RuntimeError("cyclic object graph");
    out.push_back(n);
    path.push_back(n);
    for (NodeAddr t : sort_addrs(g, target_addrs(g, n))) walk(in, g, t, out, path);
    path.pop_back();
}

} // namespace

std::vector<NodeAddr> traverse_addrs(Interp& in, const GraphData& g) {
    auto roots = root_addrs(g);
    if (roots.size() != 1)
        throw RuntimeError("traverse: object graph must have exactly one root (found " +
                           std::to_string(roots.size()) + ")");
    std::vector<NodeAddr> out;
    std::vector<NodeAddr> path;
    walk(in, g, roots[0], out, path);
    return out;
}

std::vector<NodeAddr> order_addrs(Interp& in, const GraphData& g, Collapse mode) {
    std::vector<NodeAddr> t = traverse_addrs(in, g);
    std::vector<NodeAddr> collapsed;
    for (std::size_t i = 0; i < t.size(); ++i) {
        bool keep;
        if (mode == Collapse::Final) {
            keep = std::find(t.begin() + i + 1, t.end(), t[i]) == t.end();
        } else {
            keep = std::find(t.begin(), t.begin() + i, t[i]) == t.begin() + i;
        }
        if (keep) collapsed.push_back(t[i]);
    }
    std::vector<NodeAddr> out;
    for (NodeAddr a : collapsed)
        if (!g.nodes.at(a).marked) out.push_back(a);
    return out;
}

Value mark_node(Interp& in, Value g, NodeAddr n) {
    const GraphData& gd = need_graph(in, g, "mark");
    auto it = gd.nodes.find(n);
    if (it == gd.nodes.end()) throw RuntimeError("mark: node not in graph");
    GraphData* out = in.graph_copy(gd);
    out->nodes.at(n).marked = true;
    return in.graph_value(out);
}

Value unmark(Interp& in, Value g) {
    const GraphData& gd = need_graph(in, g, "unmark");
    bool any = false;
    for (const auto& [_, node] : gd.nodes)
        if (node.marked) { any = true; break; }
    if (!any) return g;  // clean graphs keep their identity
    GraphData* out = in.graph_copy(gd);
    for (auto& [_, node] : out->nodes) node.marked = false;
    return in.graph_value(out);
}

Value addnode(Interp& in, Value node_ivars, Value node_meths, Value g,
              const std::vector<NodeAddr>& root_order, NodeAddr* out_addr) {
    const GraphData& gd = need_graph(in, g, "addnode");
    auto roots = root_addrs(gd);
    if (roots.size() != root_order.size())
        throw RuntimeError("addnode: root order does not enumerate the graph roots");
    for (NodeAddr r : root_order) {
        if (std::find(roots.begin(), roots.end(), r) == roots.end())
            throw RuntimeError("addnode: root order does not enumerate the graph roots");
        if (std::count(root_order.begin(), root_order.end(), r) != 1)
            throw RuntimeError("addnode: root order lists a root more than once");
    }
    GraphData* out = in.graph_copy(gd);
    NodeAddr addr = in.fresh_node_addr();
    out->nodes[addr] = GraphData::Node{node_ivars, node_meths, false};
    for (NodeAddr r : root_order) {
        EdgeId e = in.fresh_edge_id();
        out->edges.push_back(e);
        out->src[e] = addr;
        out->tgt[e] = r;
        out->order.emplace(addr, r);
    }
    for (std::size_t i = 0; i + 1 < root_order.size(); ++i)
        out->order.emplace(root_order[i], root_order[i + 1]);
    if (out_addr) *out_addr = addr;
    return in.graph_value(out);
}

Value node_as_value(Interp& in, const GraphData& g, NodeAddr addr) {
    const auto& n = g.nodes.at(addr);
    return in.node_value(addr, n.ivars, n.meths, n.marked);
}

Value order_value(Interp& in, Value g, Collapse mode) {
    const GraphData& gd = need_graph(in, g, mode == Collapse::Final ? "onr" : "onl");
    std::vector<Value> out;
    for (NodeAddr a : order_addrs(in, gd, mode)) out.push_back(node_as_value(in, gd, a));
    return in.list(std::move(out));
}

Value traverse_value(Interp& in, Value g) {
    const GraphData& gd = need_graph(in, g, "traverse");
    std::vector<Value> out;
    for (NodeAddr a : traverse_addrs(in, gd)) out.push_back(node_as_value(in, gd, a));
    return in.list(std::move(out));
}

Value root_value(Interp& in, Value g) {
    const GraphData& gd = need_graph(in, g, "root");
    std::vector<Value> out;
    for (NodeAddr a : root_addrs(gd)) out.push_back(node_as_value(in, gd, a));
    return in.set_of(std::move(out));
}

Value targetnodes_value(Interp& in, Value node, Value g) {
    const GraphData& gd = need_graph(in, g, "targetnodes");
    const NodeV& n = need_node(in, node, "targetnodes");
    std::vector<Value> out;
    for (NodeAddr a : target_addrs(gd, n.addr)) out.push_back(node_as_value(in, gd, a));
    return in.set_of(std::move(out));
}

Value sort_value(Interp& in, Value node_set, Value order_set) {
    if (!is<SetV>(node_set)) throw RuntimeError("sort: expected a set of nodes");
    if (!is<SetV>(order_set)) throw RuntimeError("sort: expected a set of node pairs");
    GraphData scratch;  // only the order component matters here
    std::vector<NodeAddr> addrs;
    std::vector<Value> by_addr_value;
    for (Value v : as<SetV>(node_set).elems) {
        const NodeV& n = need_node(in, v, "sort");
        addrs.push_back(n.addr);
        by_addr_value.push_back(v);
    }
    for (Value pair : as<SetV>(order_set).elems) {
        if (!is<TupleV>(pair) || as<TupleV>(pair).elems.size() != 2)
            throw RuntimeError("sort: order elements must be node pairs");
        const NodeV& a = need_node(in, as<TupleV>(pair).elems[0], "sort");
        const NodeV& b = need_node(in, as<TupleV>(pair).elems[1], "sort");
        scratch.order.emplace(a.addr, b.addr);
    }
    std::vector<Value> out;
    for (NodeAddr a : sort_addrs(scratch, addrs)) {
        for (std::size_t i = 0; i < addrs.size(); ++i)
            if (addrs[i] == a) { out.push_back(by_addr_value[i]); break; }
    }
    return in.list(std::move(out));
}

namespace {

std::string slot_summary(Interp& in, Value slot) {
    if (is<EnvV>(slot)) {
        std::string s = "{";
        auto keys = as<EnvV>(slot).env.domain();
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (i) s += ", ";
            s += keys[i];
        }
        return s + "}";
    }
    if (is<ListV>(slot)) {
        std::string s = "{";
        const auto& elems = as<ListV>(slot).elems;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (i) s += ", ";
            s += is<StrV>(elems[i]) ? as<StrV>(elems[i]).s : in.print_value(elems[i]);
        }
        return s + "}";
    }
    return in.print_value(slot);
}

} // namespace

std::string graph_dump(Interp& in, const GraphData& g) {
    std::ostringstream os;
    for (const auto& [addr, node] : g.nodes) {
        os << addr;
        if (node.marked) os << " [mark]";
        os << " ivars=" << slot_summary(in, node.ivars)
           << " methods=" << slot_summary(in, node.meths) << "\n";
    }
    for (EdgeId e : g.edges) os << g.src.at(e) << " -> " << g.tgt.at(e) << "\n";
    for (const auto& [a, b] : g.order) os << a << " < " << b << "\n";
    return os.str();
}

} // namespace braid
