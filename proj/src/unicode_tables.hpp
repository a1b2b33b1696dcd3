#pragma once

#include <cstddef>
#include <cstdint>

// Lookup tables generated from one pinned Unicode version; see
// scripts/gen_unicode_tables.py. Values in ScriptRange::cls follow the
// ScriptClass enum order in textspot/script.hpp.

namespace textspot::detail {

struct ScriptRange {
    char32_t first;
    char32_t last;
    std::uint8_t cls;
};

struct DecompEntry {
    char32_t cp;
    std::uint32_t offset;  // into kDecompPool
    std::uint8_t length;
};

struct CombiningEntry {
    char32_t cp;
    std::uint8_t ccc;
};

struct CompositionEntry {
    std::uint64_t key;  // (first << 21) | second
    char32_t composed;
};

extern const ScriptRange kScriptRanges[];
extern const std::size_t kScriptRangeCount;

extern const DecompEntry kDecomp[];
extern const std::size_t kDecompCount;
extern const char32_t kDecompPool[];

extern const CombiningEntry kCombining[];
extern const std::size_t kCombiningCount;

extern const CompositionEntry kComposition[];
extern const std::size_t kCompositionCount;

}  // namespace textspot::detail
