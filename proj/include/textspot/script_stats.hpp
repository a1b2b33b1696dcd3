#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "textspot/annotation.hpp"
#include "textspot/script.hpp"

namespace textspot {

using ScriptMatrix = std::array<std::array<long long, kScriptClassCount>, kScriptClassCount>;

// Rows of the word-level co-occurrence table.  Chinese/Japanese/Korean words
// are folded into one row because their vocabularies intermix kana, hanzi and
// hangul.
enum class WordGroup : int { Latin = 0, Arabic, Bengali, Hangul, Ckh };
inline constexpr int kWordGroupCount = 5;
using WordGroupMatrix = std::array<std::array<long long, kScriptClassCount>, kWordGroupCount>;

std::string_view word_group_name(WordGroup g);

// M[a][b] = number of images whose character set contains scripts a and b
// (diagonal = images containing a at all).  Don't-care words are skipped
// unless include_dont_care is set.
ScriptMatrix image_cooccurrence(const std::vector<std::vector<WordAnnotation>>& corpus,
                                bool include_dont_care = false);

// M[g][b] = number of characters of script b inside words whose dominant
// script falls in group g.  Digit- and symbol-dominated words contribute to
// no row.
WordGroupMatrix word_cooccurrence(const std::vector<std::vector<WordAnnotation>>& corpus,
                                  bool include_dont_care = false);

// M[i][j] = matched word pairs whose gt script is i and recognized script is
// j.  Pairs with an empty transcription on either side are skipped.
ScriptMatrix script_confusion(const std::vector<std::pair<std::string, std::string>>& pairs);

}  // namespace textspot
