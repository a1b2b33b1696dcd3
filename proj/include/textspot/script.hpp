#pragma once

#include <optional>
#include <string_view>

namespace textspot {

// Character taxonomy used for recognition bookkeeping.  Decimal digits are
// classified as Digit regardless of writing system; characters outside the
// seven named scripts fall into Symbol.
enum class ScriptClass : int {
    Latin = 0,
    Arabic,
    Bengali,
    Hangul,
    Cjk,
    Hiragana,
    Katakana,
    Digit,
    Symbol,
};

inline constexpr int kScriptClassCount = 9;

ScriptClass classify_char(char32_t c);

// Dominant script of a word: majority vote over characters of the seven
// named scripts; ties break toward the smaller enum value.  Words with no
// such characters fall back to Digit if any digit is present, else Symbol.
// Throws EmptyWord for the empty string.
ScriptClass word_script(std::u32string_view word);
ScriptClass word_script_utf8(std::string_view word);

// Chinese, Japanese and Korean ideographs plus kana share visual structure;
// several reports group them as one family.
inline bool is_ckh(ScriptClass s) {
    return s == ScriptClass::Cjk || s == ScriptClass::Hiragana ||
           s == ScriptClass::Katakana || s == ScriptClass::Hangul;
}

std::string_view script_name(ScriptClass s);

// Parses an annotation script token.  Accepts canonical names plus common
// aliases (Chinese/Japanese -> Cjk, Korean -> Hangul, Bangla -> Bengali,
// Symbols -> Symbol).  Mixed, None and Unknown map to nullopt; anything else
// throws UnknownScript.
std::optional<ScriptClass> parse_script_token(std::string_view token);

}  // namespace textspot
