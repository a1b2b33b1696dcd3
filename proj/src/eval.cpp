#include "textspot/eval.hpp"

#include <algorithm>
#include <set>

#include "textspot/error.hpp"
#include "textspot/geometry.hpp"
#include "textspot/unicode.hpp"

namespace textspot {
namespace {

long long levenshtein(const std::u32string& a, const std::u32string& b) {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0) return static_cast<long long>(m);
    if (m == 0) return static_cast<long long>(n);

    std::vector<long long> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<long long>(j);
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = static_cast<long long>(i);
        for (std::size_t j = 1; j <= m; ++j) {
            long long subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

std::u32string fold_ascii(std::u32string s) {
    for (char32_t& c : s)
        if (c >= U'A' && c <= U'Z') c += 0x20;
    return s;
}

std::u32string normalize_text(const std::string& utf8, bool ignore_case) {
    std::u32string s = nfc_utf8(utf8);
    return ignore_case ? fold_ascii(std::move(s)) : s;
}

bool transcription_gate(const std::u32string& gt, const std::u32string& pred,
                        TranscriptionMode mode) {
    switch (mode) {
    case TranscriptionMode::Exact:
        return gt == pred;
    case TranscriptionMode::EditDistance1:
        return levenshtein(gt, pred) <= 1;
    case TranscriptionMode::Ignore:
        return true;
    case TranscriptionMode::ScriptMatch:
        return !gt.empty() && !pred.empty() && word_script(gt) == word_script(pred);
    }
    return false;
}

}  // namespace

long long edit_distance(std::string_view a, std::string_view b) {
    return levenshtein(nfc_utf8(a), nfc_utf8(b));
}

EvalReport make_report(const EvalCounts& c) {
    EvalReport r;
    r.counts = c;
    r.recall = c.num_gt == 0 ? 1.0
                             : static_cast<double>(c.matched) / static_cast<double>(c.num_gt);
    if (c.num_pred == 0) {
        r.precision = c.num_gt == 0 ? 1.0 : 0.0;
    } else {
        r.precision = static_cast<double>(c.matched) / static_cast<double>(c.num_pred);
    }
    double sum = r.precision + r.recall;
    r.f1 = sum > 0.0 ? 2.0 * r.precision * r.recall / sum : 0.0;
    return r;
}

MatchResult match_detections(const std::vector<WordAnnotation>& gts,
                             const std::vector<WordAnnotation>& preds,
                             const MatchConfig& cfg) {
    require(cfg.iou_threshold > 0.0 && cfg.iou_threshold < 1.0, ErrorCode::InvalidArgument,
            "iou threshold must be in (0, 1)");
    require(cfg.min_gt_length >= 0, ErrorCode::InvalidArgument,
            "min_gt_length must be >= 0");

    const int ng = static_cast<int>(gts.size());
    const int np = static_cast<int>(preds.size());

    std::vector<std::u32string> gt_text(ng), pred_text(np);
    std::vector<char> ignored(ng, 0);
    for (int g = 0; g < ng; ++g) {
        gt_text[g] = normalize_text(gts[g].transcription, cfg.ignore_case);
        ignored[g] = gts[g].dont_care ||
                     static_cast<int>(nfc_utf8(gts[g].transcription).size()) < cfg.min_gt_length;
    }
    for (int p = 0; p < np; ++p)
        pred_text[p] = normalize_text(preds[p].transcription, cfg.ignore_case);

    std::vector<double> iou(static_cast<std::size_t>(ng) * np, 0.0);
    for (int g = 0; g < ng; ++g)
        for (int p = 0; p < np; ++p)
            iou[static_cast<std::size_t>(g) * np + p] = quad_iou(gts[g].quad, preds[p].quad);

    // Predictions sitting on ignored ground truth leave the pool entirely.
    std::vector<char> excluded(np, 0);
    for (int p = 0; p < np; ++p) {
        int best_g = -1;
        double best = 0.0;
        for (int g = 0; g < ng; ++g) {
            double v = iou[static_cast<std::size_t>(g) * np + p];
            if (v > best) {
                best = v;
                best_g = g;
            }
        }
        if (best_g >= 0 && best > cfg.iou_threshold && ignored[best_g]) excluded[p] = 1;
    }

    struct Candidate {
        double iou;
        int g, p;
    };
    std::vector<Candidate> candidates;
    for (int g = 0; g < ng; ++g) {
        if (ignored[g]) continue;
        for (int p = 0; p < np; ++p) {
            if (excluded[p]) continue;
            double v = iou[static_cast<std::size_t>(g) * np + p];
            if (v > cfg.iou_threshold) candidates.push_back({v, g, p});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        if (a.g != b.g) return a.g < b.g;
        return a.p < b.p;
    });

    MatchResult result;
    std::vector<char> gt_used(ng, 0), pred_used(np, 0);
    for (const Candidate& c : candidates) {
        if (gt_used[c.g] || pred_used[c.p]) continue;
        gt_used[c.g] = 1;
        pred_used[c.p] = 1;
        result.assigned.emplace_back(c.g, c.p);
        if (transcription_gate(gt_text[c.g], pred_text[c.p], cfg.mode))
            result.matched.emplace_back(c.g, c.p);
    }
    std::sort(result.assigned.begin(), result.assigned.end());
    std::sort(result.matched.begin(), result.matched.end());

    result.counts.matched = static_cast<long long>(result.matched.size());
    for (int g = 0; g < ng; ++g) result.counts.num_gt += ignored[g] ? 0 : 1;
    for (int p = 0; p < np; ++p) result.counts.num_pred += excluded[p] ? 0 : 1;
    return result;
}

EvalReport joint_loc_script(const std::vector<WordAnnotation>& gts,
                            const std::vector<WordAnnotation>& preds, MatchConfig cfg) {
    cfg.mode = TranscriptionMode::ScriptMatch;
    return make_report(match_detections(gts, preds, cfg).counts);
}

OcrReport ocr_report(const std::vector<OcrPair>& pairs) {
    OcrReport report;
    std::array<std::set<int>, kScriptClassCount> images;
    std::set<int> all_images;

    for (const OcrPair& pair : pairs) {
        std::u32string gt = nfc_utf8(pair.gt);
        if (gt.empty()) continue;
        std::u32string rec = nfc_utf8(pair.recognized);
        int row = static_cast<int>(word_script(gt));

        OcrRow& r = report.per_script[row];
        r.instances += 1;
        r.characters += static_cast<long long>(gt.size());
        r.exact += gt == rec ? 1 : 0;
        r.edits += levenshtein(gt, rec);
        if (pair.image_id >= 0) {
            images[row].insert(pair.image_id);
            all_images.insert(pair.image_id);
        }
    }

    for (int i = 0; i < kScriptClassCount; ++i) {
        OcrRow& r = report.per_script[i];
        r.images = static_cast<long long>(images[i].size());
        report.total.instances += r.instances;
        report.total.characters += r.characters;
        report.total.exact += r.exact;
        report.total.edits += r.edits;
        if (r.instances > 0) {
            r.has_metrics = true;
            r.accuracy = static_cast<double>(r.exact) / static_cast<double>(r.instances);
            r.edits_per_char = static_cast<double>(r.edits) / static_cast<double>(r.characters);
        }
    }
    report.total.images = static_cast<long long>(all_images.size());
    if (report.total.instances > 0) {
        report.total.has_metrics = true;
        report.total.accuracy = static_cast<double>(report.total.exact) /
                                static_cast<double>(report.total.instances);
        report.total.edits_per_char = static_cast<double>(report.total.edits) /
                                      static_cast<double>(report.total.characters);
    }
    return report;
}

}  // namespace textspot
