#pragma once

#include <string>
#include <vector>

#include "braid/value.hpp"

namespace braid {

class Interp;

// Object-graph operators shared by the multiple-inheritance braids. Graphs are
// values: every operator returns a fresh graph and leaves its input alone,
// except that clearing marks from an already clean graph returns the input
// itself so class identity survives the usual send round trips.

Value nullgraph(Interp& in);

// Structure-preserving node transformation.
Value graph_map(Interp& in, Value fn, Value g);
GraphData* graph_map_native(Interp& in, const GraphData& g,
                            const std::function<GraphData::Node(NodeAddr, const GraphData::Node&)>& f);

// Componentwise union. Shared addresses must denote the same node; an order
// union that yields a cycle is a contradiction and raises.
Value gmerge(Interp& in, Value g1, Value g2);

std::vector<NodeAddr> root_addrs(const GraphData& g);
std::vector<NodeAddr> target_addrs(const GraphData& g, NodeAddr n);

// Linearizes `addrs` consistently with the partial order; incomparable nodes
// tie-break by ascending address.
std::vector<NodeAddr> sort_addrs(const GraphData& g, std::vector<NodeAddr> addrs);

// Depth-first node sequence from the unique root; nodes reachable along k
// paths appear k times. Marks do not prune the walk.
std::vector<NodeAddr> traverse_addrs(Interp& in, const GraphData& g);

enum class Collapse { Final, First };

// traverse with every repeated node collapsed to its final (or first)
// occurrence, then marked nodes removed.
std::vector<NodeAddr> order_addrs(Interp& in, const GraphData& g, Collapse mode);

Value mark_node(Interp& in, Value g, NodeAddr n);
Value unmark(Interp& in, Value g);

// Adds a fresh node wired to every root of g. `root_order` must enumerate
// root(g) exactly once, in intended left-to-right superclass order; the order
// component is extended so consecutive roots are ordered left to right and the
// new node precedes them all.
Value addnode(Interp& in, Value node_ivars, Value node_meths, Value g,
              const std::vector<NodeAddr>& root_order, NodeAddr* out_addr = nullptr);

// Value-level wrappers used by the exposed primitives.
Value node_as_value(Interp& in, const GraphData& g, NodeAddr addr);
Value order_value(Interp& in, Value g, Collapse mode);
Value traverse_value(Interp& in, Value g);
Value root_value(Interp& in, Value g);
Value targetnodes_value(Interp& in, Value node, Value g);
Value sort_value(Interp& in, Value node_set, Value order_set);

// Debug dump: one line per node `addr [mark] ivars={...} methods={...}`, one
// line per edge `src -> tgt`, order pairs as `a < b`.
std::string graph_dump(Interp& in, const GraphData& g);

} // namespace braid
