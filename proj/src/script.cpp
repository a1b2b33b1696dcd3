#include "textspot/script.hpp"

#include <algorithm>
#include <array>

#include "textspot/error.hpp"
#include "textspot/unicode.hpp"
#include "unicode_tables.hpp"

namespace textspot {

ScriptClass classify_char(char32_t c) {
    const auto* begin = detail::kScriptRanges;
    const auto* end = detail::kScriptRanges + detail::kScriptRangeCount;
    // First range whose last >= c; it covers c iff its first <= c.
    const auto* it = std::lower_bound(begin, end, c,
        [](const detail::ScriptRange& r, char32_t cp) { return r.last < cp; });
    if (it != end && it->first <= c) return static_cast<ScriptClass>(it->cls);
    return ScriptClass::Symbol;
}

ScriptClass word_script(std::u32string_view word) {
    require(!word.empty(), ErrorCode::EmptyWord, "cannot classify an empty word");

    std::array<int, kScriptClassCount> counts{};
    for (char32_t c : word) counts[static_cast<int>(classify_char(c))]++;

    // Majority over the seven named scripts; enum order breaks ties.
    int best = -1, best_count = 0;
    for (int i = 0; i < static_cast<int>(ScriptClass::Digit); ++i) {
        if (counts[i] > best_count) {
            best = i;
            best_count = counts[i];
        }
    }
    if (best >= 0) return static_cast<ScriptClass>(best);
    if (counts[static_cast<int>(ScriptClass::Digit)] > 0) return ScriptClass::Digit;
    return ScriptClass::Symbol;
}

ScriptClass word_script_utf8(std::string_view word) {
    return word_script(utf8_decode(word));
}

std::string_view script_name(ScriptClass s) {
    switch (s) {
    case ScriptClass::Latin: return "Latin";
    case ScriptClass::Arabic: return "Arabic";
    case ScriptClass::Bengali: return "Bengali";
    case ScriptClass::Hangul: return "Hangul";
    case ScriptClass::Cjk: return "CJK";
    case ScriptClass::Hiragana: return "Hiragana";
    case ScriptClass::Katakana: return "Katakana";
    case ScriptClass::Digit: return "Digit";
    case ScriptClass::Symbol: return "Symbol";
    }
    return "Symbol";
}

std::optional<ScriptClass> parse_script_token(std::string_view token) {
    if (token == "Latin") return ScriptClass::Latin;
    if (token == "Arabic") return ScriptClass::Arabic;
    if (token == "Bengali" || token == "Bangla") return ScriptClass::Bengali;
    if (token == "Hangul" || token == "Korean") return ScriptClass::Hangul;
    if (token == "CJK" || token == "Chinese" || token == "Japanese") return ScriptClass::Cjk;
    if (token == "Hiragana") return ScriptClass::Hiragana;
    if (token == "Katakana") return ScriptClass::Katakana;
    if (token == "Digit" || token == "Digits") return ScriptClass::Digit;
    if (token == "Symbol" || token == "Symbols") return ScriptClass::Symbol;
    if (token == "Unknown" || token == "Mixed" || token == "None") return std::nullopt;
    fail(ErrorCode::UnknownScript, "unknown script token '" + std::string(token) + "'");
}

}  // namespace textspot
