#pragma once

#include <string>

#include "braid/value.hpp"

namespace braid {

class Interp;

// The multiple-inheritance braid: objects are graphs, two bootstrapped classes
// (`object` and `class`, the latter an instance of itself), plus the
// single-inheritance emulation classes.
struct AsmiBootstrap {
    Value object = nullptr;
    Value klass = nullptr;

    Value om = nullptr;  // init, dnu, gc
    Value cm = nullptr;  // init, new
    Value cdv = nullptr; // ["supers", "ivars", "menv"]

    Value objinit = nullptr;
    Value objdnu = nullptr;
    Value objgc = nullptr;
    Value classinit = nullptr;
    Value classnew = nullptr;

    // single-inheritance emulation
    Value asnew = nullptr;
    Value asm_class = nullptr;  // metaclass whose instances create classes AS-style
    Value asc = nullptr;        // the AS-style class root
};

AsmiBootstrap bootstrap_asmi(Interp& in);

// Flattened instance-variable environment: node ienvs concatenated in
// final-occurrence order.
Environment getallenv_graph(Interp& in, const GraphData& g);

// Translates a class (an object graph, or a reflective object wrapping one)
// to its class graph: nodes carry (ivar name list, method environment).
// Memoized per class identity so shared superclasses collapse when merged.
Value class_graph(Interp& in, Value cls);

// Fresh instance: the class graph with every name list turned into an
// environment of fresh locations holding null.
Value instantiate(Interp& in, Value cls);

Value send_asmi(Interp& in, Value receiver, const std::string& selector, Value arg);

} // namespace braid
