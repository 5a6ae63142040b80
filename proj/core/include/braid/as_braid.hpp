#pragma once

#include <string>
#include <vector>

#include "braid/value.hpp"

namespace braid {

class Interp;

// The single-inheritance braid: onion-layered objects, eight bootstrapped
// classes wired as in the initial configuration (each class an instance of
// its own metaclass, metaclass inheritance mirroring class inheritance).
struct AsBootstrap {
    Value object = nullptr;
    Value oc = nullptr;
    Value cd = nullptr;
    Value cdc = nullptr;
    Value mc = nullptr;
    Value mcc = nullptr;
    Value klass = nullptr;  // the class named `class`
    Value cc = nullptr;

    // predefined method suites / ivar lists
    Value om = nullptr;   // init, dnu
    Value cdm = nullptr;  // new, init
    Value cdv = nullptr;  // ["super", "ivars", "menv"]
    Value mm = nullptr;   // subclass -> metasub
    Value cm = nullptr;   // subclass -> classsub

    // builtin method values
    Value objinit = nullptr;
    Value objdnu = nullptr;
    Value cdinit = nullptr;
    Value cdnew = nullptr;
    Value metasub = nullptr;
    Value classsub = nullptr;
};

AsBootstrap bootstrap_as(Interp& in);

// Concatenation of layer instance-variable environments, outermost first.
Environment getallenv_as(Interp& in, Value o);

// Builds one instance layer per class in c's superclass chain; every layer's
// self is o. nullclass instantiates to the null object.
Value mkobj(Interp& in, Value c, Value o);

Value send_as(Interp& in, Value receiver, const std::string& selector, Value arg);

// Test/debug view of an onion.
struct AsLayerView {
    std::vector<std::string> ienv_domain;
    std::vector<std::string> menv_domain;
    const Environment* ienv;
    const Environment* menv;
};
std::vector<AsLayerView> as_layers(Value o);

} // namespace braid
