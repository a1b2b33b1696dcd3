#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>

namespace textspot {

// Image coordinates throughout: x right, y down.  Angles are measured from
// the +x axis toward +y, so a positive angle is a clockwise turn on screen.

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

// Corners in reading order: top-left, top-right, bottom-right, bottom-left.
// With y pointing down this order has positive shoelace area.
using Quad = std::array<Vec2, 4>;

inline double signed_area(const Quad& q) {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const Vec2& a = q[i];
        const Vec2& b = q[(i + 1) % 4];
        s += cross(a, b);
    }
    return 0.5 * s;
}

double polygon_area(std::span<const Vec2> pts);

bool is_convex(const Quad& q);

// Inclusive test against a quad in reading order (positive signed area).
bool point_in_quad(Vec2 p, const Quad& q);

inline Vec2 quad_centroid(const Quad& q) {
    return {(q[0].x + q[1].x + q[2].x + q[3].x) / 4.0,
            (q[0].y + q[1].y + q[2].y + q[3].y) / 4.0};
}

}  // namespace textspot
