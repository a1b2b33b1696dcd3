#include "textspot/pipeline.hpp"

#include <cstdio>

#include "textspot/error.hpp"
#include "textspot/synth.hpp"
#include "textspot/unicode.hpp"

namespace textspot {

std::vector<WordAnnotation> run_spot(const GeometryMap& geo, const LogitsProvider& provider,
                                     const Alphabet& alphabet, const SpotConfig& cfg) {
    std::vector<OrientedBox> boxes =
        run_nms(threshold_and_decode(geo, cfg.score_threshold, cfg.scale), cfg.nms);

    std::vector<WordAnnotation> out;
    out.reserve(boxes.size());
    for (int i = 0; i < static_cast<int>(boxes.size()); ++i) {
        LogitMatrix logits = provider(i, boxes[i]);
        WordAnnotation w;
        w.quad = boxes[i].quad;
        w.transcription = greedy_decode(logits, alphabet);
        if (!w.transcription.empty()) w.script = word_script_utf8(w.transcription);
        out.push_back(std::move(w));
    }
    return out;
}

LogitsProvider directory_logits_provider(const std::filesystem::path& dir) {
    return [dir](int index, const OrientedBox&) {
        char name[32];
        std::snprintf(name, sizeof name, "roi_%04d.e2et", index);
        return LogitMatrix::from_tensor(read_tensor(dir / name));
    };
}

LogitsProvider oracle_logits_provider(std::vector<WordAnnotation> gt, const Alphabet& alphabet,
                                      int frames_per_char, double magnitude) {
    return [gt = std::move(gt), alphabet, frames_per_char,
            magnitude](int, const OrientedBox& box) {
        const WordAnnotation* best = nullptr;
        double best_iou = 0.0;
        for (const WordAnnotation& w : gt) {
            double iou = quad_iou(box.quad, w.quad);
            if (iou > best_iou) {
                best_iou = iou;
                best = &w;
            }
        }
        std::string text = best && !best->dont_care ? best->transcription : std::string();
        return forced_logits(text, alphabet, frames_per_char, magnitude);
    };
}

}  // namespace textspot
