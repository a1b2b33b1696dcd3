#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "textspot/ctc.hpp"
#include "textspot/geometry.hpp"

namespace textspot {

struct LossWeights {
    double lambda_angle = 1.0;
    double lambda_dice = 1.0;
    double lambda_ctc = 1.0;
};

struct SideDistances {
    double top = 0.0, left = 0.0, bottom = 0.0, right = 0.0;

    double& operator[](int i) { return (&top)[i]; }
    double operator[](int i) const { return (&top)[i]; }
};

struct IouLossResult {
    double value = 0.0;
    SideDistances grad;  // d value / d pred
};

// -log((intersection + eps) / (union + eps)) for two axis-distance boxes
// sharing a center.  Negative predicted distances clamp to zero (and get a
// zero subgradient).  The gradient follows the min() branch actually taken.
IouLossResult iou_loss(const SideDistances& pred, const SideDistances& gt,
                       double eps = 1.0);

struct MaskedPairLoss {
    double value = 0.0;
    std::vector<double> grad_sin;  // zero outside the mask
    std::vector<double> grad_cos;
};

// Mean squared error over (sin, cos) pairs restricted to mask-positive
// entries; 0 with zero gradient when the mask is empty.
MaskedPairLoss angle_loss(std::span<const double> pred_sin, std::span<const double> pred_cos,
                          std::span<const double> gt_sin, std::span<const double> gt_cos,
                          std::span<const std::uint8_t> mask);

struct DiceLossResult {
    double value = 0.0;
    std::vector<double> grad;
};

// 1 - 2*sum(p*g)/(sum(p^2) + sum(g^2)), smoothed by eps in both numerator
// and denominator.
DiceLossResult dice_loss(std::span<const double> pred, std::span<const double> gt,
                         double eps = 1.0);

struct CtcInput {
    LogitMatrix logits;
    LabelSequence label;
};

struct LossReport {
    double l_geo = 0.0;
    double l_angle = 0.0;
    double l_dice = 0.0;
    double l_ctc = 0.0;
    double l_final = 0.0;
    GeometryMap grad_maps;               // gradient w.r.t. every pred channel
    std::vector<LogitMatrix> grad_logits;  // one per CTC input
};

// l_geo + lambda_angle*l_angle + lambda_dice*l_dice + lambda_ctc*l_ctc.
// The pred score channel is consumed as probabilities; positional terms are
// averaged over gt-positive pixels (and are 0 when there are none); l_ctc is
// the mean over the provided recognition instances (0 when empty).
LossReport composite_loss(const GeometryMap& pred, const GeometryMap& gt,
                          const std::vector<CtcInput>& ctc_inputs,
                          const LossWeights& weights = {});

// Central-difference check of an analytic gradient.  Returns
// max_i |analytic_i - numeric_i| / max(1, |numeric_i|).
using LossFn = std::function<std::pair<double, std::vector<double>>(const std::vector<double>&)>;
double grad_check(const LossFn& f, std::vector<double> x, double h = 1e-6);

// grad_check specialized to iou_loss.  Throws TiePoint when any side sits
// within 10h of a min() kink (|pred-gt| or the clamp at zero), where a
// central difference would straddle two branches.
double grad_check_iou(const SideDistances& pred, const SideDistances& gt, double h = 1e-6);

struct GradCheckReport {
    double iou = 0.0;
    double dice = 0.0;
    double angle = 0.0;
    double ctc = 0.0;
};

// Runs grad_check over seeded random points for each loss.  IoU points are
// re-drawn when any |pred-gt| side gap or pred side falls within 10h of a
// min() tie (the check would straddle a kink there; see iou TiePoint).
GradCheckReport run_gradient_suite(int points_per_loss, std::uint64_t seed, double h = 1e-6);

struct FitDemoOptions {
    double score_threshold = kDefaultScoreThreshold;
    double scale = kDefaultScale;
    double nms_merge_iou = 0.3;
    double nms_final_iou = 0.3;
    LossWeights weights;
    std::uint64_t seed = 1;
    // Optional joint recognition fit: one logit matrix per label is
    // optimized alongside the maps.
    std::vector<LabelSequence> ctc_labels;
    int ctc_classes = 0;
    int ctc_frames_per_label = 8;
};

struct FitDemoResult {
    GeometryMap maps;                // final predicted channels
    std::vector<LogitMatrix> logits;  // final CTC logits (if labels given)
    std::vector<double> loss_history;  // length steps + 1, includes the final iterate
    std::vector<OrientedBox> detections;  // decode + NMS of the final maps
};

// Gradient-descent sanity demo: starts from seeded random channels and walks
// them toward a target map by plain projected descent (score clamped to
// (0, 1), distances kept positive).  Throws Divergence if the loss rises for
// 50 consecutive steps.  steps == 0 returns the initialization untouched.
FitDemoResult fit_maps_demo(const GeometryMap& gt, int steps, double lr,
                            const FitDemoOptions& opts = {});

}  // namespace textspot
