#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "doctest.h"
#include "textspot/error.hpp"
#include "textspot/geometry.hpp"
#include "textspot/losses.hpp"
#include "textspot/rng.hpp"
#include "textspot/synth.hpp"

using namespace textspot;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a textspot::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("iou loss on nested boxes matches the closed form") {
    // pred 2x2 centered inside gt 4x4: intersection 4, union 16
    SideDistances pred{1, 1, 1, 1};
    SideDistances gt{2, 2, 2, 2};
    auto r = iou_loss(pred, gt, 1.0);
    CHECK(r.value == doctest::Approx(std::log(17.0 / 5.0)).epsilon(1e-12));

    // identical boxes are a perfect fit
    auto zero = iou_loss(gt, gt, 1.0);
    CHECK(zero.value == 0.0);
}

TEST_CASE("iou loss clamps negative predictions with a dead gradient") {
    SideDistances pred{-3, 1, 1, 1};
    SideDistances clamped{0, 1, 1, 1};
    SideDistances gt{2, 2, 2, 2};
    auto a = iou_loss(pred, gt);
    auto b = iou_loss(clamped, gt);
    CHECK(a.value == b.value);
    CHECK(a.grad[0] == 0.0);
}

TEST_CASE("iou loss gradient passes central differences away from kinks") {
    SplitMix64 rng(13);
    for (int i = 0; i < 50; ++i) {
        SideDistances pred, gt;
        bool safe = true;
        for (int k = 0; k < 4; ++k) {
            pred[k] = rng.uniform(0.5, 8.0);
            gt[k] = rng.uniform(0.5, 8.0);
            if (std::abs(pred[k] - gt[k]) < 1e-3) safe = false;
        }
        if (!safe) {
            --i;
            continue;
        }
        CHECK(grad_check_iou(pred, gt) < 1e-6);
    }
}

TEST_CASE("grad_check_iou refuses points straddling a min() branch") {
    SideDistances pred{2.0, 1.0, 1.0, 1.0};
    SideDistances gt{2.0, 2.0, 2.0, 2.0};
    CHECK(code_of([&] { grad_check_iou(pred, gt); }) == ErrorCode::TiePoint);
    SideDistances at_zero{1e-9, 1.0, 1.0, 1.0};
    CHECK(code_of([&] { grad_check_iou(at_zero, gt); }) == ErrorCode::TiePoint);
}

TEST_CASE("dice loss matches hand computation and its gradient checks out") {
    std::vector<double> p = {1.0, 0.0};
    std::vector<double> g = {1.0, 1.0};
    auto r = dice_loss(p, g, 1.0);
    // 1 - (2*1 + 1) / (1 + 2 + 1)
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-12));

    auto perfect = dice_loss(g, g, 1.0);
    CHECK(perfect.value == 0.0);

    SplitMix64 rng(21);
    std::vector<double> pr(16), gr(16);
    for (auto& v : pr) v = rng.uniform(0.05, 0.95);
    for (auto& v : gr) v = rng.uniform_int(2);
    LossFn f = [&](const std::vector<double>& x) {
        auto d = dice_loss(x, gr, 1.0);
        return std::make_pair(d.value, d.grad);
    };
    CHECK(grad_check(f, pr) < 1e-8);
}

TEST_CASE("angle loss averages squared sin/cos error over the mask") {
    std::vector<double> ps = {0.0, 0.5, 9.0};
    std::vector<double> pc = {1.0, 0.5, 9.0};
    std::vector<double> gs = {0.0, 0.0, 0.0};
    std::vector<double> gc = {1.0, 1.0, 1.0};
    std::vector<std::uint8_t> mask = {1, 1, 0};  // last entry ignored
    auto r = angle_loss(ps, pc, gs, gc, mask);
    // entry 0 contributes 0, entry 1 contributes 0.25 + 0.25
    CHECK(r.value == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.grad_sin[2] == 0.0);
    CHECK(r.grad_cos[2] == 0.0);
    CHECK(r.grad_sin[1] == doctest::Approx(2.0 * 0.5 / 2.0));

    std::vector<std::uint8_t> empty_mask = {0, 0, 0};
    auto e = angle_loss(ps, pc, gs, gc, empty_mask);
    CHECK(e.value == 0.0);
}

TEST_CASE("angle loss is exactly zero across the pi branch cut") {
    auto a = unit_angle(3.14159265358979323846);
    auto b = unit_angle(-3.14159265358979323846);
    std::vector<double> ps = {a.sin_t}, pc = {a.cos_t};
    std::vector<double> gs = {b.sin_t}, gc = {b.cos_t};
    std::vector<std::uint8_t> mask = {1};
    CHECK(angle_loss(ps, pc, gs, gc, mask).value == 0.0);
}

TEST_CASE("composite loss is the weighted sum of its parts") {
    GeometryMap gt = GeometryMap::zeros(16, 16);
    encode_box(gt, make_box_quad({20, 18}, 16, 8, 0.3));
    encode_box(gt, make_box_quad({42, 44}, 16, 8, -0.2));

    GeometryMap pred = gt;
    SplitMix64 rng(3);
    for (auto& v : pred.channels.data) v += rng.uniform(-0.05, 0.05);
    // keep the score channel a probability
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x)
            pred.at(kChScore, y, x) = std::min(0.999, std::max(0.001, pred.at(kChScore, y, x)));

    std::vector<CtcInput> inputs;
    Alphabet alpha = default_alphabet();
    inputs.push_back({forced_logits("exit", alpha), encode_label("exit", alpha)});
    inputs.push_back({forced_logits("365", alpha), encode_label("365", alpha)});

    LossWeights w;
    w.lambda_angle = 2.0;
    w.lambda_dice = 0.5;
    w.lambda_ctc = 3.0;
    auto r = composite_loss(pred, gt, inputs, w);
    CHECK(r.l_final ==
          doctest::Approx(r.l_geo + 2.0 * r.l_angle + 0.5 * r.l_dice + 3.0 * r.l_ctc)
              .epsilon(1e-12));
    CHECK(r.l_geo > 0.0);
    CHECK(r.l_dice > 0.0);
    CHECK(r.l_ctc >= 0.0);
    CHECK(r.grad_maps.width == 16);
    REQUIRE(r.grad_logits.size() == 2);
    CHECK(r.grad_logits[0].frames == inputs[0].logits.frames);
}

TEST_CASE("composite loss vanishes when prediction equals ground truth") {
    GeometryMap gt = GeometryMap::zeros(12, 12);
    encode_box(gt, make_box_quad({24, 20}, 18, 9, 0.1));
    auto r = composite_loss(gt, gt, {});
    CHECK(r.l_geo == 0.0);
    CHECK(r.l_angle == 0.0);
    CHECK(r.l_dice == 0.0);
    CHECK(r.l_ctc == 0.0);
    CHECK(r.l_final == 0.0);
    for (double v : r.grad_maps.channels.data) CHECK(std::isfinite(v));
}

TEST_CASE("composite loss averages ctc over instances") {
    GeometryMap gt = GeometryMap::zeros(8, 8);
    encode_box(gt, make_box_quad({16, 16}, 14, 8, 0.0));
    Alphabet alpha = default_alphabet();

    CtcInput one{forced_logits("exit", alpha, 4, 2.0), encode_label("exit", alpha)};
    CtcInput two{forced_logits("hotel", alpha, 4, 2.0), encode_label("hotel", alpha)};
    auto a = composite_loss(gt, gt, {one});
    auto b = composite_loss(gt, gt, {two});
    auto both = composite_loss(gt, gt, {one, two});
    CHECK(both.l_ctc == doctest::Approx((a.l_ctc + b.l_ctc) / 2.0).epsilon(1e-12));
}

TEST_CASE("composite loss rejects mismatched shapes") {
    GeometryMap a = GeometryMap::zeros(8, 8);
    GeometryMap b = GeometryMap::zeros(8, 9);
    CHECK(code_of([&] { composite_loss(a, b, {}); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("grad_check flags a wrong gradient") {
    LossFn good = [](const std::vector<double>& x) {
        double v = 0.0;
        std::vector<double> g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            v += x[i] * x[i];
            g[i] = 2.0 * x[i];
        }
        return std::make_pair(v, g);
    };
    LossFn bad = [](const std::vector<double>& x) {
        double v = 0.0;
        std::vector<double> g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            v += x[i] * x[i];
            g[i] = 3.0 * x[i];  // wrong slope
        }
        return std::make_pair(v, g);
    };
    std::vector<double> x = {0.7, -1.2, 2.4};
    CHECK(grad_check(good, x) < 1e-9);
    CHECK(grad_check(bad, x) > 1e-2);
}

TEST_CASE("gradient suite stays within tolerance at modest sample counts") {
    auto report = run_gradient_suite(20, 123);
    CHECK(report.iou < 1e-4);
    CHECK(report.dice < 1e-6);
    CHECK(report.angle < 1e-6);
    CHECK(report.ctc < 1e-6);
}

TEST_CASE("fit demo walks the loss down and finds the boxes") {
    GeometryMap gt = GeometryMap::zeros(16, 16);
    Quad q = make_box_quad({32, 32}, 20, 10, 0.2);
    REQUIRE(encode_box(gt, q) > 0);

    FitDemoOptions opts;
    opts.seed = 4;
    auto r = fit_maps_demo(gt, 1200, 0.5, opts);
    REQUIRE(r.loss_history.size() == 1201);
    CHECK(r.loss_history.back() < 0.05 * r.loss_history.front());
    REQUIRE(r.detections.size() == 1);
    CHECK(quad_iou(r.detections[0].quad, q) > 0.9);
}

TEST_CASE("fit demo with zero steps returns the untouched initialization") {
    GeometryMap gt = GeometryMap::zeros(8, 8);
    encode_box(gt, make_box_quad({16, 16}, 14, 8, 0.0));
    FitDemoOptions opts;
    opts.seed = 9;
    auto a = fit_maps_demo(gt, 0, 0.5, opts);
    auto b = fit_maps_demo(gt, 0, 0.5, opts);
    CHECK(a.loss_history.size() == 1);
    CHECK(a.maps.channels.data == b.maps.channels.data);
}

TEST_CASE("fit demo co-trains ctc logits when labels are given") {
    GeometryMap gt = GeometryMap::zeros(16, 16);
    encode_box(gt, make_box_quad({20, 18}, 16, 8, 0.0));
    encode_box(gt, make_box_quad({42, 44}, 16, 8, 0.0));

    FitDemoOptions opts;
    opts.seed = 1;
    opts.ctc_labels = {{1, 2, 3}, {2, 2, 4}};
    opts.ctc_classes = 5;
    auto r = fit_maps_demo(gt, 800, 0.5, opts);
    REQUIRE(r.logits.size() == 2);
    CHECK(greedy_path(r.logits[0]) == LabelSequence{1, 2, 3});
    CHECK(greedy_path(r.logits[1]) == LabelSequence{2, 2, 4});
}
