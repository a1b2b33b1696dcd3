#include "textspot/losses.hpp"

#include <algorithm>
#include <cmath>

#include "textspot/error.hpp"
#include "textspot/nms.hpp"
#include "textspot/rng.hpp"

namespace textspot {
namespace {

void check_finite(double v, const char* what) {
    require(std::isfinite(v), ErrorCode::InvalidArgument,
            std::string(what) + " must be finite");
}

}  // namespace

IouLossResult iou_loss(const SideDistances& pred, const SideDistances& gt, double eps) {
    require(eps > 0.0, ErrorCode::InvalidArgument, "eps must be positive");
    for (int i = 0; i < 4; ++i) {
        check_finite(pred[i], "pred distance");
        check_finite(gt[i], "gt distance");
        require(gt[i] >= 0.0, ErrorCode::InvalidArgument, "gt distances must be >= 0");
    }

    // Indices: 0 top, 1 left, 2 bottom, 3 right.
    double p[4], active[4];
    for (int i = 0; i < 4; ++i) {
        active[i] = pred[i] >= 0.0 ? 1.0 : 0.0;  // clamp subgradient
        p[i] = std::max(pred[i], 0.0);
    }
    double h_p = p[0] + p[2], w_p = p[1] + p[3];
    double h_g = gt[0] + gt[2], w_g = gt[1] + gt[3];
    double h_i = std::min(p[0], gt[0]) + std::min(p[2], gt[2]);
    double w_i = std::min(p[1], gt[1]) + std::min(p[3], gt[3]);
    double inter = w_i * h_i;
    double uni = w_p * h_p + w_g * h_g - inter;

    IouLossResult r;
    r.value = std::log(uni + eps) - std::log(inter + eps);
    for (int i = 0; i < 4; ++i) {
        bool vertical = (i == 0 || i == 2);
        double d_area = vertical ? w_p : h_p;
        // min(p, g) follows the pred branch at ties.
        double d_inter = (p[i] <= gt[i] ? 1.0 : 0.0) * (vertical ? w_i : h_i);
        double d_uni = d_area - d_inter;
        r.grad[i] = active[i] * (d_uni / (uni + eps) - d_inter / (inter + eps));
    }
    return r;
}

MaskedPairLoss angle_loss(std::span<const double> pred_sin, std::span<const double> pred_cos,
                          std::span<const double> gt_sin, std::span<const double> gt_cos,
                          std::span<const std::uint8_t> mask) {
    std::size_t n = pred_sin.size();
    require(pred_cos.size() == n && gt_sin.size() == n && gt_cos.size() == n &&
                mask.size() == n,
            ErrorCode::ShapeMismatch, "angle loss inputs must have equal length");

    MaskedPairLoss r;
    r.grad_sin.assign(n, 0.0);
    r.grad_cos.assign(n, 0.0);
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (mask[i]) ++m;
    if (m == 0) return r;

    double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < n; ++i) {
        if (!mask[i]) continue;
        double ds = pred_sin[i] - gt_sin[i];
        double dc = pred_cos[i] - gt_cos[i];
        r.value += (ds * ds + dc * dc) * inv_m;
        r.grad_sin[i] = 2.0 * ds * inv_m;
        r.grad_cos[i] = 2.0 * dc * inv_m;
    }
    return r;
}

DiceLossResult dice_loss(std::span<const double> pred, std::span<const double> gt,
                         double eps) {
    require(pred.size() == gt.size(), ErrorCode::ShapeMismatch,
            "dice loss inputs must have equal length");
    require(eps >= 0.0, ErrorCode::InvalidArgument, "eps must be >= 0");

    double overlap = 0.0, p2 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        overlap += pred[i] * gt[i];
        p2 += pred[i] * pred[i];
        g2 += gt[i] * gt[i];
    }
    double num = 2.0 * overlap + eps;
    double den = p2 + g2 + eps;
    require(den > 0.0, ErrorCode::InvalidArgument,
            "dice denominator is zero (all-zero inputs with eps == 0)");

    DiceLossResult r;
    r.value = 1.0 - num / den;
    r.grad.resize(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i)
        r.grad[i] = (num * 2.0 * pred[i] - 2.0 * gt[i] * den) / (den * den);
    return r;
}

LossReport composite_loss(const GeometryMap& pred, const GeometryMap& gt,
                          const std::vector<CtcInput>& ctc_inputs,
                          const LossWeights& weights) {
    require(pred.width == gt.width && pred.height == gt.height, ErrorCode::ShapeMismatch,
            "pred and gt maps must have the same shape");
    const int w = pred.width, h = pred.height;
    const std::size_t n = static_cast<std::size_t>(w) * h;

    LossReport r;
    r.grad_maps = GeometryMap::zeros(w, h);

    std::vector<std::uint8_t> mask(n);
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mask[i] = gt.channels.data[i] > 0.5 ? 1 : 0;
        m += mask[i];
    }

    // Box regression and angle terms live on ground-truth-positive pixels.
    if (m > 0) {
        double inv_m = 1.0 / static_cast<double>(m);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (!mask[static_cast<std::size_t>(y) * w + x]) continue;
                SideDistances pd{pred.at(kChTop, y, x), pred.at(kChLeft, y, x),
                                 pred.at(kChBottom, y, x), pred.at(kChRight, y, x)};
                SideDistances gd{gt.at(kChTop, y, x), gt.at(kChLeft, y, x),
                                 gt.at(kChBottom, y, x), gt.at(kChRight, y, x)};
                IouLossResult il = iou_loss(pd, gd);
                r.l_geo += il.value * inv_m;
                r.grad_maps.at(kChTop, y, x) = il.grad.top * inv_m;
                r.grad_maps.at(kChLeft, y, x) = il.grad.left * inv_m;
                r.grad_maps.at(kChBottom, y, x) = il.grad.bottom * inv_m;
                r.grad_maps.at(kChRight, y, x) = il.grad.right * inv_m;
            }
        }
    }

    const double* pred_base = pred.channels.data.data();
    const double* gt_base = gt.channels.data.data();
    MaskedPairLoss al = angle_loss({pred_base + kChSin * n, n}, {pred_base + kChCos * n, n},
                                   {gt_base + kChSin * n, n}, {gt_base + kChCos * n, n},
                                   mask);
    r.l_angle = al.value;

    DiceLossResult dl = dice_loss({pred_base, n}, {gt_base, n});
    r.l_dice = dl.value;

    for (const CtcInput& in : ctc_inputs) {
        CtcResult cr = ctc_loss(in.logits, in.label);
        r.l_ctc += cr.loss;
        r.grad_logits.push_back(std::move(cr.grad));
    }
    if (!ctc_inputs.empty()) {
        double scale = weights.lambda_ctc / static_cast<double>(ctc_inputs.size());
        r.l_ctc /= static_cast<double>(ctc_inputs.size());
        for (LogitMatrix& g : r.grad_logits)
            for (double& v : g.values) v *= scale;
    }

    r.l_final = r.l_geo + weights.lambda_angle * r.l_angle + weights.lambda_dice * r.l_dice +
                weights.lambda_ctc * r.l_ctc;

    double* out = r.grad_maps.channels.data.data();
    for (std::size_t i = 0; i < n; ++i) {
        out[kChScore * n + i] = weights.lambda_dice * dl.grad[i];
        out[kChSin * n + i] = weights.lambda_angle * al.grad_sin[i];
        out[kChCos * n + i] = weights.lambda_angle * al.grad_cos[i];
    }
    return r;
}

double grad_check(const LossFn& f, std::vector<double> x, double h) {
    require(h > 0.0, ErrorCode::InvalidArgument, "finite-difference step must be positive");
    auto [value, grad] = f(x);
    (void)value;
    require(grad.size() == x.size(), ErrorCode::ShapeMismatch,
            "gradient length does not match input length");

    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double xi = x[i];
        x[i] = xi + h;
        double up = f(x).first;
        x[i] = xi - h;
        double down = f(x).first;
        x[i] = xi;
        double numeric = (up - down) / (2.0 * h);
        double err = std::abs(grad[i] - numeric) / std::max(1.0, std::abs(numeric));
        worst = std::max(worst, err);
    }
    return worst;
}

double grad_check_iou(const SideDistances& pred, const SideDistances& gt, double h) {
    for (int i = 0; i < 4; ++i) {
        require(std::abs(pred[i] - gt[i]) >= 10.0 * h && std::abs(pred[i]) >= 10.0 * h,
                ErrorCode::TiePoint,
                "pred side within 10h of a min() kink; the check is meaningless there");
    }
    LossFn f = [&gt](const std::vector<double>& v) {
        SideDistances p{v[0], v[1], v[2], v[3]};
        IouLossResult r = iou_loss(p, gt);
        return std::make_pair(r.value, std::vector<double>{r.grad.top, r.grad.left,
                                                           r.grad.bottom, r.grad.right});
    };
    return grad_check(f, {pred.top, pred.left, pred.bottom, pred.right}, h);
}

GradCheckReport run_gradient_suite(int points_per_loss, std::uint64_t seed, double h) {
    require(points_per_loss > 0, ErrorCode::InvalidArgument, "need at least one point");
    SplitMix64 rng(seed);
    GradCheckReport report;

    for (int p = 0; p < points_per_loss; ++p) {
        SideDistances pred, gt;
        bool tie = true;
        while (tie) {
            tie = false;
            for (int i = 0; i < 4; ++i) {
                pred[i] = rng.uniform(0.5, 5.0);
                gt[i] = rng.uniform(0.5, 5.0);
                if (std::abs(pred[i] - gt[i]) < 10.0 * h) tie = true;
            }
        }
        report.iou = std::max(report.iou, grad_check_iou(pred, gt, h));
    }

    constexpr std::size_t kVecLen = 16;
    for (int p = 0; p < points_per_loss; ++p) {
        std::vector<double> pred(kVecLen), gt(kVecLen);
        for (auto& v : pred) v = rng.next_double();
        for (auto& v : gt) v = rng.next_double();
        LossFn f = [&gt](const std::vector<double>& v) {
            DiceLossResult r = dice_loss(v, gt);
            return std::make_pair(r.value, r.grad);
        };
        report.dice = std::max(report.dice, grad_check(f, pred, h));
    }

    for (int p = 0; p < points_per_loss; ++p) {
        std::vector<double> gs(kVecLen), gc(kVecLen);
        std::vector<std::uint8_t> mask(kVecLen);
        for (auto& v : gs) v = rng.uniform(-1.0, 1.0);
        for (auto& v : gc) v = rng.uniform(-1.0, 1.0);
        std::size_t m = 0;
        for (auto& b : mask) m += (b = rng.next_double() < 0.5 ? 1 : 0);
        if (m == 0) mask[0] = 1;
        std::vector<double> x(2 * kVecLen);
        for (auto& v : x) v = rng.uniform(-1.0, 1.0);
        LossFn f = [&](const std::vector<double>& v) {
            std::span<const double> ps(v.data(), kVecLen);
            std::span<const double> pc(v.data() + kVecLen, kVecLen);
            MaskedPairLoss r = angle_loss(ps, pc, gs, gc, mask);
            std::vector<double> grad(2 * kVecLen);
            std::copy(r.grad_sin.begin(), r.grad_sin.end(), grad.begin());
            std::copy(r.grad_cos.begin(), r.grad_cos.end(), grad.begin() + kVecLen);
            return std::make_pair(r.value, grad);
        };
        report.angle = std::max(report.angle, grad_check(f, x, h));
    }

    for (int p = 0; p < points_per_loss; ++p) {
        const int T = 6, K = 5;
        LabelSequence label(static_cast<std::size_t>(1 + rng.uniform_int(3)));
        for (int& l : label) l = 1 + rng.uniform_int(K - 1);
        if (min_frames(label) > T) {
            label.resize(1);
        }
        std::vector<double> x(static_cast<std::size_t>(T) * K);
        for (auto& v : x) v = rng.uniform(-2.0, 2.0);
        LossFn f = [&label](const std::vector<double>& v) {
            LogitMatrix lm = LogitMatrix::zeros(T, K);
            lm.values = v;
            CtcResult r = ctc_loss(lm, label);
            return std::make_pair(r.loss, r.grad.values);
        };
        report.ctc = std::max(report.ctc, grad_check(f, x, h));
    }
    return report;
}

FitDemoResult fit_maps_demo(const GeometryMap& gt, int steps, double lr,
                            const FitDemoOptions& opts) {
    require(steps >= 0, ErrorCode::InvalidArgument, "steps must be >= 0");
    check_finite(lr, "learning rate");

    SplitMix64 rng(opts.seed);
    const int w = gt.width, h = gt.height;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    GeometryMap pred = GeometryMap::zeros(w, h);
    double* data = pred.channels.data.data();
    // Score starts low so the background term dominates early; distances and
    // angle start small but nonzero.
    for (std::size_t i = 0; i < n; ++i) data[kChScore * n + i] = rng.uniform(0.01, 0.1);
    for (int c = kChTop; c <= kChRight; ++c)
        for (std::size_t i = 0; i < n; ++i) data[c * n + i] = rng.uniform(1.0, 5.0);
    for (int c = kChSin; c <= kChCos; ++c)
        for (std::size_t i = 0; i < n; ++i) data[c * n + i] = rng.uniform(-0.7, 0.7);

    std::vector<CtcInput> ctc_inputs;
    if (!opts.ctc_labels.empty()) {
        require(opts.ctc_classes >= 2, ErrorCode::InvalidArgument,
                "ctc_classes must be >= 2 when labels are given");
        require(opts.ctc_frames_per_label >= 2, ErrorCode::InvalidArgument,
                "ctc_frames_per_label must be >= 2");
        for (const LabelSequence& label : opts.ctc_labels) {
            int frames = std::max(min_frames(label),
                                  opts.ctc_frames_per_label *
                                      std::max(1, static_cast<int>(label.size())));
            CtcInput in;
            in.logits = LogitMatrix::zeros(frames, opts.ctc_classes);
            for (double& v : in.logits.values) v = rng.uniform(-1.0, 1.0);
            in.label = label;
            ctc_inputs.push_back(std::move(in));
        }
    }

    FitDemoResult result;
    int rising = 0;
    for (int step = 0;; ++step) {
        LossReport rep = composite_loss(pred, gt, ctc_inputs, opts.weights);
        result.loss_history.push_back(rep.l_final);
        if (step > 0 && rep.l_final > result.loss_history[step - 1]) {
            if (++rising >= 50)
                fail(ErrorCode::Divergence,
                     "loss increased for 50 consecutive steps (step " +
                         std::to_string(step) + ")");
        } else {
            rising = 0;
        }
        if (step == steps) break;

        const double* g = rep.grad_maps.channels.data.data();
        for (std::size_t i = 0; i < pred.channels.data.size(); ++i) data[i] -= lr * g[i];
        // Projection: probabilities stay probabilities, distances stay usable.
        for (std::size_t i = 0; i < n; ++i)
            data[kChScore * n + i] = std::clamp(data[kChScore * n + i], 1e-4, 1.0 - 1e-4);
        for (int c = kChTop; c <= kChRight; ++c)
            for (std::size_t i = 0; i < n; ++i)
                data[c * n + i] = std::max(data[c * n + i], 1e-3);
        for (std::size_t k = 0; k < ctc_inputs.size(); ++k)
            for (std::size_t i = 0; i < ctc_inputs[k].logits.values.size(); ++i)
                ctc_inputs[k].logits.values[i] -= lr * rep.grad_logits[k].values[i];
    }

    result.maps = std::move(pred);
    for (CtcInput& in : ctc_inputs) result.logits.push_back(std::move(in.logits));
    result.detections = run_nms(threshold_and_decode(result.maps, opts.score_threshold,
                                                     opts.scale),
                                {opts.nms_merge_iou, opts.nms_final_iou});
    return result;
}

}  // namespace textspot
