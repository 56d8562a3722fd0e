// Items flowing through channels are opaque payload handles. Two values
// are reserved: nullptr marks an empty ring slot and never travels, and
// eos() is the end-of-stream sentinel placed on channels by the runtime
// (never by user services).

#pragma once

namespace streamfarm {

namespace detail {
inline int eos_marker_storage = 0;
}

inline void* eos() { return static_cast<void*>(&detail::eos_marker_storage); }

inline bool is_eos(void* item) { return item == eos(); }

// Verdict a node service returns for each invocation. Sources are invoked
// with a null item and keep being invoked until they return End.
struct Verdict {
    enum class Kind { Emit, Absorb, End };

    Kind kind;
    void* payload;

    static Verdict emit(void* p) { return {Kind::Emit, p}; }
    static Verdict absorb() { return {Kind::Absorb, nullptr}; }
    static Verdict end() { return {Kind::End, nullptr}; }
};

}  // namespace streamfarm
