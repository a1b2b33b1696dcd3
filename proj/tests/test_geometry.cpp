#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "textspot/error.hpp"
#include "textspot/geometry.hpp"
#include "textspot/nms.hpp"
#include "textspot/rng.hpp"

using namespace textspot;

namespace {

constexpr double kPi = 3.14159265358979323846;

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

TEST_CASE("unit_angle wraps into (-pi, pi] and fuses the branch cut") {
    auto a = unit_angle(kPi);
    auto b = unit_angle(-kPi);
    CHECK(a.theta == b.theta);
    CHECK(a.sin_t == b.sin_t);  // bit-identical, not approximately equal
    CHECK(a.cos_t == b.cos_t);
    CHECK(a.theta == kPi);

    auto c = unit_angle(3.0 * kPi);
    CHECK(c.theta == doctest::Approx(kPi));

    auto z = unit_angle(0.0);
    CHECK(z.sin_t == 0.0);
    CHECK(z.cos_t == 1.0);

    auto q = unit_angle(kPi / 2.0);
    CHECK(q.sin_t == doctest::Approx(1.0));
    CHECK(std::abs(q.cos_t) < 1e-15);
}

TEST_CASE("normalize_angle rescales onto the unit circle") {
    auto u = normalize_angle(3.0, 4.0);
    CHECK(u.sin_t == doctest::Approx(0.6));
    CHECK(u.cos_t == doctest::Approx(0.8));
    CHECK(std::hypot(u.sin_t, u.cos_t) == doctest::Approx(1.0));
    CHECK(code_of([] { normalize_angle(1e-7, 1e-7); }) == ErrorCode::DegenerateAngle);
}

TEST_CASE("make_box_quad at cardinal angles") {
    Quad q0 = make_box_quad({10, 10}, 8, 4, 0.0);
    CHECK(q0[0].x == doctest::Approx(6));
    CHECK(q0[0].y == doctest::Approx(8));
    CHECK(q0[1].x == doctest::Approx(14));
    CHECK(q0[1].y == doctest::Approx(8));
    CHECK(q0[2].x == doctest::Approx(14));
    CHECK(q0[2].y == doctest::Approx(12));
    CHECK(q0[3].x == doctest::Approx(6));
    CHECK(q0[3].y == doctest::Approx(12));

    // quarter turn clockwise on screen: reading direction now points down
    Quad q1 = make_box_quad({10, 10}, 8, 4, kPi / 2.0);
    CHECK(q1[0].x == doctest::Approx(12));
    CHECK(q1[0].y == doctest::Approx(6));
    CHECK(q1[1].x == doctest::Approx(12));
    CHECK(q1[1].y == doctest::Approx(14));
    CHECK(q1[2].x == doctest::Approx(8));
    CHECK(q1[2].y == doctest::Approx(14));
    CHECK(q1[3].x == doctest::Approx(8));
    CHECK(q1[3].y == doctest::Approx(6));

    CHECK(signed_area(q0) == doctest::Approx(32));
    CHECK(signed_area(q1) == doctest::Approx(32));
}

TEST_CASE("box_angle inverts make_box_quad") {
    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        double theta = rng.uniform(-kPi + 1e-9, kPi);
        Quad q = make_box_quad({rng.uniform(10, 90), rng.uniform(10, 90)},
                               rng.uniform(4, 30), rng.uniform(3, 20), theta);
        CHECK(box_angle(q) == doctest::Approx(theta).epsilon(1e-9));
    }
}

TEST_CASE("decode_pixel reconstructs corners from side distances") {
    PixelGeometry g;
    g.score = 1.0;
    g.d_top = 2.0;
    g.d_left = 4.0;
    g.d_bottom = 2.0;
    g.d_right = 4.0;
    g.sin_t = 0.0;
    g.cos_t = 1.0;

    OrientedBox b = decode_pixel({10, 10}, g, 1.0);
    CHECK(b.quad[0].x == doctest::Approx(6));
    CHECK(b.quad[0].y == doctest::Approx(8));
    CHECK(b.quad[2].x == doctest::Approx(14));
    CHECK(b.quad[2].y == doctest::Approx(12));
    CHECK(b.angle == doctest::Approx(0));

    // quarter turn: the same distances produce the rotated box
    auto u = unit_angle(kPi / 2.0);
    g.sin_t = u.sin_t;
    g.cos_t = u.cos_t;
    OrientedBox r = decode_pixel({10, 10}, g, 1.0);
    CHECK(r.quad[0].x == doctest::Approx(12));
    CHECK(r.quad[0].y == doctest::Approx(6));
    CHECK(r.quad[1].x == doctest::Approx(12));
    CHECK(r.quad[1].y == doctest::Approx(14));

    // grid scale multiplies the anchor point, not the distances
    OrientedBox s = decode_pixel({10, 10}, g, 4.0);
    CHECK(quad_centroid(s.quad).x == doctest::Approx(40));
    CHECK(quad_centroid(s.quad).y == doctest::Approx(40));
}

TEST_CASE("decode_pixel rejects degenerate inputs") {
    PixelGeometry g;
    g.d_top = 0.0;
    g.d_bottom = 0.0;
    g.d_left = 1.0;
    g.d_right = 1.0;
    g.cos_t = 1.0;
    CHECK(code_of([&] { decode_pixel({0, 0}, g, 1.0); }) == ErrorCode::ZeroAreaBox);

    PixelGeometry h;
    h.d_top = 1.0;
    h.d_bottom = 1.0;
    h.d_left = 1.0;
    h.d_right = 1.0;
    h.sin_t = 0.0;
    h.cos_t = 0.0;
    CHECK(code_of([&] { decode_pixel({0, 0}, h, 1.0); }) == ErrorCode::DegenerateAngle);
}

TEST_CASE("encode_box marks exactly the grid points inside the shrunk quad") {
    GeometryMap map = GeometryMap::zeros(16, 16);
    Quad q = make_box_quad({20, 18}, 16, 8, 0.0);
    int n = encode_box(map, q, 4.0, 0.6);
    // shrunk box spans x in [15.2, 24.8], y in [15.6, 20.4];
    // grid points are multiples of 4: x in {16, 20, 24}, y in {16, 20}
    CHECK(n == 6);
    CHECK(count_positive_pixels(q, 16, 16, 4.0, 0.6) == 6);

    CHECK(map.at(kChScore, 4, 4) == 1.0);
    CHECK(map.at(kChScore, 4, 5) == 1.0);
    CHECK(map.at(kChScore, 5, 6) == 1.0);
    CHECK(map.at(kChScore, 4, 3) == 0.0);
    CHECK(map.at(kChScore, 3, 4) == 0.0);

    // distances at grid point (16, 16) to the unshrunk edges
    PixelGeometry g = map.pixel(4, 4);
    CHECK(g.d_top == doctest::Approx(2));     // to y = 14
    CHECK(g.d_left == doctest::Approx(4));    // to x = 12
    CHECK(g.d_bottom == doctest::Approx(6));  // to y = 22
    CHECK(g.d_right == doctest::Approx(12));  // to x = 28
    CHECK(g.sin_t == 0.0);
    CHECK(g.cos_t == 1.0);
}

TEST_CASE("encode_box off the grid writes nothing and reports zero") {
    GeometryMap map = GeometryMap::zeros(8, 8);
    Quad q = make_box_quad({500, 500}, 20, 10, 0.3);
    CHECK(encode_box(map, q) == 0);
    for (double v : map.channels.data) CHECK(v == 0.0);
}

TEST_CASE("encode_box validates its inputs") {
    GeometryMap map = GeometryMap::zeros(8, 8);
    Quad nonconvex = {Vec2{0, 0}, Vec2{10, 0}, Vec2{1, 1}, Vec2{0, 10}};
    CHECK(code_of([&] { encode_box(map, nonconvex); }) == ErrorCode::NonConvexQuad);

    Quad collapsed = {Vec2{5, 5}, Vec2{5, 5}, Vec2{5, 5}, Vec2{5, 5}};
    CHECK(code_of([&] { encode_box(map, collapsed); }) == ErrorCode::DegenerateQuad);

    Quad fine = make_box_quad({16, 16}, 10, 6, 0.0);
    CHECK(code_of([&] { encode_box(map, fine, -1.0); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { encode_box(map, fine, 4.0, 0.0); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { encode_box(map, fine, 4.0, 1.5); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("single box round-trips through encode, decode and nms") {
    GeometryMap map = GeometryMap::zeros(24, 24);
    Quad q = make_box_quad({48, 40}, 36, 14, 0.4);
    int n = encode_box(map, q);
    REQUIRE(n > 0);

    auto raw = threshold_and_decode(map, 0.9);
    CHECK(static_cast<int>(raw.size()) == n);
    for (const auto& b : raw) {
        CHECK(quad_iou(b.quad, q) > 0.99);
        CHECK(b.angle == doctest::Approx(0.4).epsilon(1e-6));
    }

    auto kept = run_nms(raw);
    REQUIRE(kept.size() == 1);
    CHECK(quad_iou(kept[0].quad, q) > 0.99);
    // locality merge sums the per-pixel scores
    CHECK(kept[0].score == doctest::Approx(static_cast<double>(n)));
}

TEST_CASE("threshold_and_decode respects the threshold and clamps negatives") {
    GeometryMap map = GeometryMap::zeros(4, 4);
    PixelGeometry g;
    g.score = 0.95;
    g.d_top = 2.0;
    g.d_left = -0.5;  // negative prediction clamps to zero width on that side
    g.d_bottom = 2.0;
    g.d_right = 4.0;
    g.sin_t = 0.0;
    g.cos_t = 1.0;
    map.set_pixel(1, 1, g);

    g.score = 0.5;  // below threshold, ignored
    map.set_pixel(2, 2, g);

    auto boxes = threshold_and_decode(map, 0.9, 1.0);
    REQUIRE(boxes.size() == 1);
    CHECK(boxes[0].quad[0].x == doctest::Approx(1.0));  // left side collapsed to the anchor
    CHECK(boxes[0].quad[1].x == doctest::Approx(5.0));
    CHECK(boxes[0].score == doctest::Approx(0.95));
}

TEST_CASE("quad_iou matches hand-computed overlaps") {
    Quad a = {Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}, Vec2{0, 1}};
    Quad b = {Vec2{0.5, 0.5}, Vec2{1.5, 0.5}, Vec2{1.5, 1.5}, Vec2{0.5, 1.5}};
    Quad c = {Vec2{5, 5}, Vec2{6, 5}, Vec2{6, 6}, Vec2{5, 6}};
    Quad big = {Vec2{-0.5, -0.5}, Vec2{1.5, -0.5}, Vec2{1.5, 1.5}, Vec2{-0.5, 1.5}};

    CHECK(quad_iou(a, a) == doctest::Approx(1.0));
    CHECK(quad_iou(a, b) == doctest::Approx(0.25 / 1.75));
    CHECK(quad_iou(b, a) == doctest::Approx(0.25 / 1.75));
    CHECK(quad_iou(a, c) == 0.0);
    CHECK(quad_iou(a, big) == doctest::Approx(1.0 / 4.0));

    // counter-clockwise input is normalized before clipping
    Quad b_ccw = {b[0], b[3], b[2], b[1]};
    CHECK(quad_iou(a, b_ccw) == doctest::Approx(0.25 / 1.75));

    // rotated square: 45-degree diamond inscribed in the unit square
    Quad diamond = make_box_quad({0.5, 0.5}, std::sqrt(2.0) / 2.0, std::sqrt(2.0) / 2.0,
                                 kPi / 4.0);
    CHECK(quad_iou(a, diamond) == doctest::Approx(0.5 / 1.0).epsilon(1e-9));
}

TEST_CASE("geometry map from_tensor validates the channel axis") {
    Tensor t = Tensor::zeros({6, 4, 4});
    CHECK(code_of([&] { GeometryMap::from_tensor(t); }) == ErrorCode::ShapeMismatch);
    Tensor ok = Tensor::zeros({7, 4, 5});
    GeometryMap m = GeometryMap::from_tensor(ok);
    CHECK(m.width == 5);
    CHECK(m.height == 4);
}

TEST_CASE("point_in_quad is inclusive at edges and corners") {
    Quad q = {Vec2{0, 0}, Vec2{4, 0}, Vec2{4, 4}, Vec2{0, 4}};
    CHECK(point_in_quad({2, 2}, q));
    CHECK(point_in_quad({0, 0}, q));
    CHECK(point_in_quad({4, 2}, q));
    CHECK(point_in_quad({2, 0}, q));
    CHECK(!point_in_quad({4.01, 2}, q));
    CHECK(!point_in_quad({-0.01, 0}, q));
}

TEST_CASE("is_convex distinguishes quads") {
    CHECK(is_convex({Vec2{0, 0}, Vec2{4, 0}, Vec2{4, 4}, Vec2{0, 4}}));
    CHECK(!is_convex({Vec2{0, 0}, Vec2{10, 0}, Vec2{1, 1}, Vec2{0, 10}}));
}
