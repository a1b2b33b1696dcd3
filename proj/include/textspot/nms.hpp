#pragma once

#include <vector>

#include "textspot/geometry.hpp"

namespace textspot {

struct NmsConfig {
    double merge_iou = 0.3;
    double final_iou = 0.3;
};

// Single left-to-right, top-to-bottom pass over row-major detections: while
// the next box overlaps the running candidate above merge_iou they are fused
// (score-weighted corner average, scores summed), otherwise the candidate is
// emitted and the box starts a new one.  Input order is the decode order.
std::vector<OrientedBox> locality_merge(const std::vector<OrientedBox>& boxes,
                                        double merge_iou);

// Classic greedy suppression: highest score first (ties keep input order),
// drops boxes overlapping a kept box above final_iou.
std::vector<OrientedBox> standard_nms(const std::vector<OrientedBox>& boxes,
                                      double final_iou);

std::vector<OrientedBox> run_nms(const std::vector<OrientedBox>& boxes,
                                 const NmsConfig& cfg = {});

}  // namespace textspot
