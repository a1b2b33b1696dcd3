#include "textspot/roi.hpp"

#include <algorithm>
#include <cmath>

#include "textspot/error.hpp"

namespace textspot {
namespace {

double bilinear_at(const Tensor& image, int channel, double x, double y) {
    const int h = static_cast<int>(image.dims[1]);
    const int w = static_cast<int>(image.dims[2]);
    // Pixel (i, j) has its center at (j + 0.5, i + 0.5).
    double fx = x - 0.5;
    double fy = y - 0.5;
    int x0 = static_cast<int>(std::floor(fx));
    int y0 = static_cast<int>(std::floor(fy));
    double wx = fx - x0;
    double wy = fy - y0;

    auto at = [&](int yy, int xx) -> double {
        if (xx < 0 || xx >= w || yy < 0 || yy >= h) return 0.0;
        return image.data[(static_cast<std::size_t>(channel) * h + yy) * w + xx];
    };
    double top = (1.0 - wx) * at(y0, x0) + wx * at(y0, x0 + 1);
    double bottom = (1.0 - wx) * at(y0 + 1, x0) + wx * at(y0 + 1, x0 + 1);
    return (1.0 - wy) * top + wy * bottom;
}

}  // namespace

double quad_mean_width(const Quad& q) {
    return 0.5 * (norm(q[1] - q[0]) + norm(q[2] - q[3]));
}

double quad_mean_height(const Quad& q) {
    return 0.5 * (norm(q[3] - q[0]) + norm(q[2] - q[1]));
}

RoiDims roi_dims(const Quad& quad, int out_height) {
    require(out_height >= 1, ErrorCode::InvalidArgument, "output height must be >= 1");
    double w = quad_mean_width(quad);
    double h = quad_mean_height(quad);
    require(h > 0.0, ErrorCode::DegenerateQuad, "quad has zero mean height");

    RoiDims d;
    d.width = std::max(1, static_cast<int>(std::llround(w * out_height / h)));
    d.ctc_frames = std::max(1, d.width / 4);
    return d;
}

Tensor sample_quad(const Tensor& image, const Quad& quad, int out_height) {
    require(image.dims.size() == 3, ErrorCode::ShapeMismatch,
            "image tensor must have shape [channels, height, width]");
    RoiDims dims = roi_dims(quad, out_height);
    const int channels = static_cast<int>(image.dims[0]);
    const int ow = dims.width, oh = out_height;

    Tensor out = Tensor::zeros({static_cast<std::uint32_t>(channels),
                                static_cast<std::uint32_t>(oh),
                                static_cast<std::uint32_t>(ow)});
    for (int r = 0; r < oh; ++r) {
        double v = (r + 0.5) / oh;
        for (int c = 0; c < ow; ++c) {
            double u = (c + 0.5) / ow;
            // Bilinear warp of the unit square onto the quad.
            Vec2 p = (1.0 - u) * (1.0 - v) * quad[0] + u * (1.0 - v) * quad[1] +
                     u * v * quad[2] + (1.0 - u) * v * quad[3];
            for (int ch = 0; ch < channels; ++ch)
                out.data[(static_cast<std::size_t>(ch) * oh + r) * ow + c] =
                    bilinear_at(image, ch, p.x, p.y);
        }
    }
    return out;
}

std::vector<RoiPair> select_training_rois(const std::vector<OrientedBox>& preds,
                                          const std::vector<WordAnnotation>& gts,
                                          double iou_min) {
    std::vector<RoiPair> candidates;
    for (int p = 0; p < static_cast<int>(preds.size()); ++p) {
        for (int g = 0; g < static_cast<int>(gts.size()); ++g) {
            if (gts[g].dont_care) continue;
            double iou = quad_iou(preds[p].quad, gts[g].quad);
            if (iou > iou_min) candidates.push_back({p, g, iou});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const RoiPair& a, const RoiPair& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        if (a.pred_index != b.pred_index) return a.pred_index < b.pred_index;
        return a.gt_index < b.gt_index;
    });

    std::vector<char> pred_used(preds.size(), 0), gt_used(gts.size(), 0);
    std::vector<RoiPair> out;
    for (const RoiPair& c : candidates) {
        if (pred_used[c.pred_index] || gt_used[c.gt_index]) continue;
        pred_used[c.pred_index] = 1;
        gt_used[c.gt_index] = 1;
        out.push_back(c);
    }
    return out;
}

}  // namespace textspot
