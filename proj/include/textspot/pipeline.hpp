#pragma once

#include <filesystem>
#include <functional>
#include <vector>

#include "textspot/alphabet.hpp"
#include "textspot/annotation.hpp"
#include "textspot/ctc.hpp"
#include "textspot/geometry.hpp"
#include "textspot/nms.hpp"

namespace textspot {

struct SpotConfig {
    double score_threshold = kDefaultScoreThreshold;
    double scale = kDefaultScale;
    NmsConfig nms;
};

// Supplies recognition logits for the i-th surviving detection.
using LogitsProvider = std::function<LogitMatrix(int index, const OrientedBox& box)>;

// Detection half + recognition half glued together: threshold the geometry
// map, decode, run NMS, then ask the provider for logits per box and decode
// them greedily.  Detections are returned in NMS output order; transcripts
// come back as annotations with the dominant script filled in (Unknown when
// the transcript is empty).
std::vector<WordAnnotation> run_spot(const GeometryMap& geo, const LogitsProvider& provider,
                                     const Alphabet& alphabet, const SpotConfig& cfg = {});

// Reads roi_0000.e2et, roi_0001.e2et, ... (index = detection order) from a
// directory.  Missing or malformed files throw.
LogitsProvider directory_logits_provider(const std::filesystem::path& dir);

// Stand-in for a trained recognizer: each detection is matched to the
// best-overlapping ground-truth word and its transcription is forced into
// the logits.  Detections overlapping nothing get a single blank frame.
LogitsProvider oracle_logits_provider(std::vector<WordAnnotation> gt, const Alphabet& alphabet,
                                      int frames_per_char = 4, double magnitude = 1e3);

}  // namespace textspot
