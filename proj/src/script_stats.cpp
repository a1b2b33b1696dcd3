#include "textspot/script_stats.hpp"

#include <optional>
#include <set>

#include "textspot/unicode.hpp"

namespace textspot {
namespace {

std::optional<WordGroup> word_group(ScriptClass s) {
    switch (s) {
    case ScriptClass::Latin: return WordGroup::Latin;
    case ScriptClass::Arabic: return WordGroup::Arabic;
    case ScriptClass::Bengali: return WordGroup::Bengali;
    case ScriptClass::Hangul: return WordGroup::Hangul;
    case ScriptClass::Cjk:
    case ScriptClass::Hiragana:
    case ScriptClass::Katakana: return WordGroup::Ckh;
    default: return std::nullopt;  // digit/symbol words belong to no group
    }
}

}  // namespace

std::string_view word_group_name(WordGroup g) {
    switch (g) {
    case WordGroup::Latin: return "Latin";
    case WordGroup::Arabic: return "Arabic";
    case WordGroup::Bengali: return "Bengali";
    case WordGroup::Hangul: return "Hangul";
    case WordGroup::Ckh: return "CKH";
    }
    return "CKH";
}

ScriptMatrix image_cooccurrence(const std::vector<std::vector<WordAnnotation>>& corpus,
                                bool include_dont_care) {
    ScriptMatrix m{};
    for (const auto& image : corpus) {
        std::set<int> present;
        for (const WordAnnotation& word : image) {
            if (word.dont_care && !include_dont_care) continue;
            for (char32_t c : utf8_decode(word.transcription))
                present.insert(static_cast<int>(classify_char(c)));
        }
        for (int a : present)
            for (int b : present) m[a][b] += 1;
    }
    return m;
}

WordGroupMatrix word_cooccurrence(const std::vector<std::vector<WordAnnotation>>& corpus,
                                  bool include_dont_care) {
    WordGroupMatrix m{};
    for (const auto& image : corpus) {
        for (const WordAnnotation& word : image) {
            if (word.dont_care && !include_dont_care) continue;
            std::u32string text = utf8_decode(word.transcription);
            if (text.empty()) continue;
            auto group = word_group(word_script(text));
            if (!group) continue;
            for (char32_t c : text)
                m[static_cast<int>(*group)][static_cast<int>(classify_char(c))] += 1;
        }
    }
    return m;
}

ScriptMatrix script_confusion(const std::vector<std::pair<std::string, std::string>>& pairs) {
    ScriptMatrix m{};
    for (const auto& [gt, recognized] : pairs) {
        std::u32string g = utf8_decode(gt);
        std::u32string r = utf8_decode(recognized);
        if (g.empty() || r.empty()) continue;
        m[static_cast<int>(word_script(g))][static_cast<int>(word_script(r))] += 1;
    }
    return m;
}

}  // namespace textspot
