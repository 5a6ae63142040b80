#pragma once

#include <string>

#include "braid/value.hpp"

namespace braid {

class Interp;

// The reflective-send braid: objects pair a class with a representation, and
// delivery is a message to the class. The primitive only knows how direct
// instances of `class` deliver; everything else regresses up the classof
// chain until it bottoms out there.
struct AsmirsBootstrap {
    Value object = nullptr;
    Value klass = nullptr;

    Value om = nullptr;  // init, dnu
    Value cm = nullptr;  // on, new, send, init

    Value objinit = nullptr;
    Value objdnu = nullptr;
    Value classinit = nullptr;
    Value classnew = nullptr;
    Value classon = nullptr;
    Value classsend = nullptr;

    // example strategy: a metaclass whose `on` orders nodes by first
    // occurrence instead of final occurrence
    Value con = nullptr;
    Value strategy_c = nullptr;
};

AsmirsBootstrap bootstrap_asmirs(Interp& in);

Value send_rs(Interp& in, Value receiver, const std::string& selector, Value arg);

Value classof(Interp& in, Value o);
Value repof(Interp& in, Value o);

} // namespace braid
