#include "textspot/nms.hpp"

#include <algorithm>
#include <numeric>

namespace textspot {
namespace {

OrientedBox fuse(const OrientedBox& a, const OrientedBox& b) {
    OrientedBox out;
    out.score = a.score + b.score;
    double wa = a.score, wb = b.score;
    if (out.score > 0.0) {
        wa /= out.score;
        wb /= out.score;
    } else {
        wa = wb = 0.5;
    }
    for (int i = 0; i < 4; ++i) out.quad[i] = wa * a.quad[i] + wb * b.quad[i];
    out.angle = box_angle(out.quad);
    return out;
}

}  // namespace

std::vector<OrientedBox> locality_merge(const std::vector<OrientedBox>& boxes,
                                        double merge_iou) {
    std::vector<OrientedBox> out;
    bool have_candidate = false;
    OrientedBox candidate;
    for (const OrientedBox& box : boxes) {
        if (have_candidate && quad_iou(candidate.quad, box.quad) > merge_iou) {
            candidate = fuse(candidate, box);
        } else {
            if (have_candidate) out.push_back(candidate);
            candidate = box;
            have_candidate = true;
        }
    }
    if (have_candidate) out.push_back(candidate);
    return out;
}

std::vector<OrientedBox> standard_nms(const std::vector<OrientedBox>& boxes,
                                      double final_iou) {
    std::vector<std::size_t> order(boxes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return boxes[i].score > boxes[j].score;
    });

    std::vector<OrientedBox> kept;
    for (std::size_t idx : order) {
        const OrientedBox& box = boxes[idx];
        bool suppressed = false;
        for (const OrientedBox& k : kept) {
            if (quad_iou(k.quad, box.quad) > final_iou) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) kept.push_back(box);
    }
    return kept;
}

std::vector<OrientedBox> run_nms(const std::vector<OrientedBox>& boxes, const NmsConfig& cfg) {
    return standard_nms(locality_merge(boxes, cfg.merge_iou), cfg.final_iou);
}

}  // namespace textspot
