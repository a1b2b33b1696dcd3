#pragma once

#include <vector>

#include "textspot/annotation.hpp"
#include "textspot/geometry.hpp"
#include "textspot/tensor_io.hpp"

namespace textspot {

inline constexpr int kDefaultRoiHeight = 40;

double quad_mean_width(const Quad& q);
double quad_mean_height(const Quad& q);

struct RoiDims {
    int width = 0;       // aspect-preserving width at the fixed output height
    int ctc_frames = 0;  // width / 4, at least 1
};

// Output geometry for a cropped word: width = round(w * H / h) clamped to at
// least 1.  Throws DegenerateQuad when the quad's mean height is zero.
RoiDims roi_dims(const Quad& quad, int out_height = kDefaultRoiHeight);

// Bilinearly samples the quad onto an out_height-tall, aspect-preserving
// grid.  The unit square maps onto the quad (corner order TL,TR,BR,BL);
// sample points sit at output pixel centers, source pixel (i, j) has its
// center at (j + 0.5, i + 0.5), and reads outside the image return 0.
// image must be [C, H, W].
Tensor sample_quad(const Tensor& image, const Quad& quad, int out_height = kDefaultRoiHeight);

struct RoiPair {
    int pred_index = -1;
    int gt_index = -1;
    double iou = 0.0;
};

// Greedy one-to-one assignment of detections to ground-truth words by
// descending overlap, keeping only pairs above iou_min and skipping
// don't-care regions.
std::vector<RoiPair> select_training_rois(const std::vector<OrientedBox>& preds,
                                          const std::vector<WordAnnotation>& gts,
                                          double iou_min = 0.9);

}  // namespace textspot
