#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "braid/errors.hpp"
#include "braid/kernel_ast.hpp"
#include "braid/value.hpp"

namespace braid {

struct AsBootstrap;
struct AsmiBootstrap;
struct AsmirsBootstrap;

enum class Braid { None, As, Asmi, Asmirs };

// One interpreter instance: arena, store, global environment and evaluation
// state. Instances are fully independent; a single instance is single-threaded.
class Interp {
public:
    struct Config {
        int depth_limit = 10000;
        bool trace_send = false;
        std::uint64_t seed = 0;
        std::ostream* trace_out = nullptr;  // defaults to the output stream
        std::ostream* out = nullptr;        // defaults to std::cout
    };

    Interp() : Interp(Config{}) {}
    explicit Interp(Config cfg);
    ~Interp();
    Interp(const Interp&) = delete;
    Interp& operator=(const Interp&) = delete;

    // ---- store -----------------------------------------------------------
    Loc alloc(Value v);
    Value load(Loc l) const;
    void store_set(Loc l, Value v);

    // ---- value construction ----------------------------------------------
    Value num(std::int64_t n);
    Value str(std::string s);
    Value boolean(bool b);
    Value tuple(std::vector<Value> elems);
    Value unit();
    Value list(std::vector<Value> elems);
    Value set_of(std::vector<Value> elems);  // deduplicates, keeps first occurrences
    Value cons_value(std::string tag, Value payload);
    Value closure(std::optional<std::string> param, KExprPtr body, Environment env);
    Value prim(std::string name, int arity,
               std::function<Value(Interp&, const std::vector<Value>&)> fn);
    Value env_value(Environment e);
    Value eps() const { return eps_; }
    Value null_value() const { return null_; }
    Value nullclass() const { return nullclass_; }
    Value hole();
    Value loc_value(Loc l);
    Value as_object(AsObjectNode n);
    GraphData* graph();
    GraphData* graph_copy(const GraphData& g);
    Value graph_value(GraphData* g);
    Value node_value(NodeAddr addr, Value ivars, Value meths, bool marked);
    Value refl_object(Value cls, Value rep);

    NodeAddr fresh_node_addr() { return next_node_addr_++; }
    EdgeId fresh_edge_id() { return next_edge_id_++; }

    // ---- environments ------------------------------------------------------
    // Binds one key to a fresh location holding v.
    Environment env_bind(const std::string& key, Value v);
    // Rightmost value bound to key, or eps when absent.
    Value env_lookup(const Environment& e, std::string_view key);
    // Assignment through an environment: runtime error when the key is absent.
    void env_assign(const Environment& e, std::string_view key, Value v);

    // ---- evaluation --------------------------------------------------------
    Value evaluate(const KExpr& e, const Environment& env);
    Value apply(Value f, Value arg);
    Value apply2(Value f, Value a, Value b) { return apply(apply(f, a), b); }
    // The paradoxical operator: knot-ties f's fixpoint through a back-patched
    // placeholder.
    Value fix(Value f);

    // Runs one top-level item against the global environment. Returns the
    // value for expression items, nullptr for declaration groups.
    Value run_item(const KItem& item);
    // Runs a program; prints each expression item's value to `out`.
    void run_program(const KProgram& p);
    // Convenience: parse + desugar + run.
    void run_source(std::string_view text);
    // Parse + desugar + evaluate a single expression against the globals.
    Value eval_expr_source(std::string_view text);

    Environment& globals() { return globals_; }
    void bind_global(const std::string& name, Value v);

    // ---- message dispatch --------------------------------------------------
    // Polymorphic send: onions, object graphs and reflective objects.
    Value send(Value receiver, const std::string& selector, Value arg);

    // ---- braids ------------------------------------------------------------
    void load_braid(Braid b);
    const AsBootstrap* as_bootstrap() const { return as_.get(); }
    const AsmiBootstrap* asmi_bootstrap() const { return asmi_.get(); }
    const AsmirsBootstrap* asmirs_bootstrap() const { return asmirs_.get(); }
    AsBootstrap& as_braid();          // bootstraps on first use
    AsmiBootstrap& asmi_braid();
    AsmirsBootstrap& asmirs_braid();

    // ---- misc ---------------------------------------------------------------
    std::string print_value(Value v) const;
    const Config& config() const { return cfg_; }
    std::ostream& out() const;
    void trace_send_line(Value recv, const std::string& sel, const std::string& via,
                         const std::string& node);
    int value_id(Value v);

    // cg memoization: class identity -> class graph (graphlib keeps node
    // addresses stable across merges this way).
    std::map<const ValueNode*, Value> cg_memo;
    std::vector<const ValueNode*> cg_in_progress;

    // The reflective-send primitive knows how direct instances of `class`
    // deliver; these are installed by the reflective bootstrap before any
    // message is sent.
    Value rs_class = nullptr;
    Value rs_classon = nullptr;
    Value rs_classsend = nullptr;

    struct DepthGuard {
        explicit DepthGuard(Interp& i) : i(i) {
            if (++i.depth_ > i.cfg_.depth_limit)
                throw RuntimeError("application depth limit exceeded (" +
                                   std::to_string(i.cfg_.depth_limit) + " frames)");
        }
        ~DepthGuard() { --i.depth_; }
        Interp& i;
    };

private:
    Value alloc_node(ValueVariant v);
    friend struct DepthGuard;

    Config cfg_;
    std::deque<ValueNode> nodes_;
    std::deque<AsObjectNode> as_nodes_;
    std::deque<GraphData> graphs_;
    std::deque<ReflData> refls_;
    std::deque<PrimDef> prim_defs_;
    std::deque<Value> store_;
    Environment globals_;
    Value eps_ = nullptr;
    Value null_ = nullptr;
    Value nullclass_ = nullptr;
    Value unit_ = nullptr;
    int depth_ = 0;
    NodeAddr next_node_addr_ = 1;
    EdgeId next_edge_id_ = 1;
    std::map<const ValueNode*, int> ids_;
    int next_id_ = 1;
    const PrimDef* assign_def_ = nullptr;  // recognized by the application rule
    std::unique_ptr<AsBootstrap> as_;
    std::unique_ptr<AsmiBootstrap> asmi_;
    std::unique_ptr<AsmirsBootstrap> asmirs_;

    friend void install_prims(Interp&);
};

// Installs the primitive suite into the global environment (done by the
// constructor; exposed for tests that build bare interpreters).
void install_prims(Interp& interp);

} // namespace braid
