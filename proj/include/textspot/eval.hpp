#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "textspot/annotation.hpp"
#include "textspot/script.hpp"

namespace textspot {

// Levenshtein distance over codepoints after canonical composition, so
// precomposed and decomposed spellings compare equal.
long long edit_distance(std::string_view a, std::string_view b);

enum class TranscriptionMode {
    Exact,        // equal after NFC
    EditDistance1,  // edit distance <= 1
    Ignore,       // geometry only
    ScriptMatch,  // dominant scripts agree (both sides non-empty)
};

struct MatchConfig {
    double iou_threshold = 0.5;
    TranscriptionMode mode = TranscriptionMode::Exact;
    int min_gt_length = 0;  // shorter ground truth becomes don't-care
    bool ignore_case = false;  // ASCII-only fold before comparing
};

struct EvalCounts {
    long long matched = 0;
    long long num_gt = 0;
    long long num_pred = 0;

    EvalCounts& operator+=(const EvalCounts& o) {
        matched += o.matched;
        num_gt += o.num_gt;
        num_pred += o.num_pred;
        return *this;
    }
};

struct EvalReport {
    double recall = 0.0;
    double precision = 0.0;
    double f1 = 0.0;
    EvalCounts counts;
};

EvalReport make_report(const EvalCounts& c);

struct MatchResult {
    // Geometric one-to-one assignment (gt index, pred index), before the
    // transcription gate.
    std::vector<std::pair<int, int>> assigned;
    // The subset that also passed the transcription gate.
    std::vector<std::pair<int, int>> matched;
    EvalCounts counts;
};

// Candidate pairs with IoU above the threshold are assigned greedily by
// descending IoU (ties prefer the lower gt index, then pred index), each side
// used at most once.  Don't-care ground truth never counts toward num_gt; a
// prediction whose best-overlapping ground truth is don't-care (above the
// threshold) is dropped from num_pred.
MatchResult match_detections(const std::vector<WordAnnotation>& gts,
                             const std::vector<WordAnnotation>& preds,
                             const MatchConfig& cfg = {});

// Localization + script agreement: match geometry as usual, then require
// equal dominant scripts on the matched transcriptions.
EvalReport joint_loc_script(const std::vector<WordAnnotation>& gts,
                            const std::vector<WordAnnotation>& preds,
                            MatchConfig cfg = {});

struct OcrPair {
    std::string gt;        // UTF-8, non-empty
    std::string recognized;  // may be empty
    int image_id = -1;     // optional grouping key for the Images column
};

struct OcrRow {
    long long instances = 0;   // word pairs
    long long characters = 0;  // total gt codepoints (after NFC)
    long long exact = 0;       // pairs recognized exactly
    long long edits = 0;       // summed edit distance
    long long images = 0;      // distinct image ids (when provided)
    bool has_metrics = false;  // false for empty groups
    double accuracy = 0.0;     // exact / instances
    double edits_per_char = 0.0;  // edits / characters
};

struct OcrReport {
    std::array<OcrRow, kScriptClassCount> per_script;
    OcrRow total;
};

// Groups pairs by the ground truth's dominant script and reports exact-match
// accuracy and normalized edit distance per group.  Pairs with an empty
// ground-truth transcription are skipped.
OcrReport ocr_report(const std::vector<OcrPair>& pairs);

}  // namespace textspot
