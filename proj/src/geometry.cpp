#include "textspot/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "textspot/error.hpp"

namespace textspot {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMinAngleNorm = 1e-6;

Vec2 rotate(double sin_t, double cos_t, Vec2 v) {
    return {cos_t * v.x - sin_t * v.y, sin_t * v.x + cos_t * v.y};
}

double edge_distance(Vec2 p, Vec2 a, Vec2 b) {
    return std::abs(cross(b - a, p - a)) / norm(b - a);
}

Quad oriented_positive(const Quad& q) {
    Quad out = q;
    if (signed_area(out) < 0.0) std::swap(out[1], out[3]);
    return out;
}

void check_encodable(const Quad& q) {
    for (int i = 0; i < 4; ++i)
        require(norm(q[(i + 1) % 4] - q[i]) > 0.0, ErrorCode::DegenerateQuad,
                "quad edge has zero length");
    require(is_convex(q), ErrorCode::NonConvexQuad, "quad is not convex");
    require(signed_area(q) > 0.0, ErrorCode::DegenerateQuad, "quad has non-positive area");
}

// Visits every grid point inside the shrunk quad; returns the visit count.
template <typename Fn>
int for_each_positive(const Quad& quad, int grid_width, int grid_height, double scale,
                      double shrink, Fn&& fn) {
    require(scale > 0.0, ErrorCode::InvalidArgument, "scale must be positive");
    require(shrink > 0.0 && shrink <= 1.0, ErrorCode::InvalidArgument,
            "shrink must be in (0, 1]");
    check_encodable(quad);

    Vec2 c = quad_centroid(quad);
    Quad shrunk;
    for (int i = 0; i < 4; ++i) shrunk[i] = c + shrink * (quad[i] - c);

    double min_x = shrunk[0].x, max_x = shrunk[0].x;
    double min_y = shrunk[0].y, max_y = shrunk[0].y;
    for (int i = 1; i < 4; ++i) {
        min_x = std::min(min_x, shrunk[i].x);
        max_x = std::max(max_x, shrunk[i].x);
        min_y = std::min(min_y, shrunk[i].y);
        max_y = std::max(max_y, shrunk[i].y);
    }
    int gx0 = std::max(0, static_cast<int>(std::floor(min_x / scale)));
    int gx1 = std::min(grid_width - 1, static_cast<int>(std::ceil(max_x / scale)));
    int gy0 = std::max(0, static_cast<int>(std::floor(min_y / scale)));
    int gy1 = std::min(grid_height - 1, static_cast<int>(std::ceil(max_y / scale)));

    int count = 0;
    for (int gy = gy0; gy <= gy1; ++gy) {
        for (int gx = gx0; gx <= gx1; ++gx) {
            Vec2 p{scale * gx, scale * gy};
            if (!point_in_quad(p, shrunk)) continue;
            fn(gx, gy, p);
            ++count;
        }
    }
    return count;
}

std::vector<Vec2> clip_with_quad(std::vector<Vec2> poly, const Quad& clip) {
    for (int i = 0; i < 4 && poly.size() >= 3; ++i) {
        Vec2 a = clip[i];
        Vec2 b = clip[(i + 1) % 4];
        Vec2 edge = b - a;
        std::vector<Vec2> out;
        out.reserve(poly.size() + 1);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            Vec2 cur = poly[j];
            Vec2 nxt = poly[(j + 1) % poly.size()];
            double dc = cross(edge, cur - a);
            double dn = cross(edge, nxt - a);
            if (dc >= 0.0) out.push_back(cur);
            if ((dc >= 0.0) != (dn >= 0.0)) {
                double t = dc / (dc - dn);
                out.push_back(cur + t * (nxt - cur));
            }
        }
        poly = std::move(out);
    }
    if (poly.size() < 3) poly.clear();
    return poly;
}

}  // namespace

GeometryMap GeometryMap::zeros(int width, int height) {
    require(width > 0 && height > 0, ErrorCode::InvalidArgument,
            "geometry map dimensions must be positive");
    GeometryMap m;
    m.width = width;
    m.height = height;
    m.channels = Tensor::zeros({kGeoChannels, static_cast<std::uint32_t>(height),
                                static_cast<std::uint32_t>(width)});
    return m;
}

GeometryMap GeometryMap::from_tensor(Tensor t) {
    require(t.dims.size() == 3 && t.dims[0] == kGeoChannels, ErrorCode::ShapeMismatch,
            "geometry map tensor must have shape [7, height, width]");
    GeometryMap m;
    m.height = static_cast<int>(t.dims[1]);
    m.width = static_cast<int>(t.dims[2]);
    m.channels = std::move(t);
    return m;
}

PixelGeometry GeometryMap::pixel(int y, int x) const {
    return {at(kChScore, y, x), at(kChTop, y, x),    at(kChLeft, y, x), at(kChBottom, y, x),
            at(kChRight, y, x), at(kChSin, y, x), at(kChCos, y, x)};
}

void GeometryMap::set_pixel(int y, int x, const PixelGeometry& g) {
    at(kChScore, y, x) = g.score;
    at(kChTop, y, x) = g.d_top;
    at(kChLeft, y, x) = g.d_left;
    at(kChBottom, y, x) = g.d_bottom;
    at(kChRight, y, x) = g.d_right;
    at(kChSin, y, x) = g.sin_t;
    at(kChCos, y, x) = g.cos_t;
}

UnitAngle normalize_angle(double sin_t, double cos_t) {
    double n = std::hypot(sin_t, cos_t);
    require(n >= kMinAngleNorm, ErrorCode::DegenerateAngle,
            "(sin, cos) vector is too short to carry a direction");
    UnitAngle u;
    u.sin_t = sin_t / n;
    u.cos_t = cos_t / n;
    u.theta = std::atan2(u.sin_t, u.cos_t);
    return u;
}

UnitAngle unit_angle(double theta) {
    double t = std::remainder(theta, 2.0 * kPi);
    if (t == -kPi) t = kPi;  // canonical representative, so pi == -pi exactly
    return {std::sin(t), std::cos(t), t};
}

Quad make_box_quad(Vec2 center, double width, double height, double theta) {
    require(width > 0.0 && height > 0.0, ErrorCode::DegenerateQuad,
            "box width and height must be positive");
    UnitAngle u = unit_angle(theta);
    double hw = width / 2.0, hh = height / 2.0;
    Quad local{{{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}}};
    Quad q;
    for (int i = 0; i < 4; ++i) q[i] = center + rotate(u.sin_t, u.cos_t, local[i]);
    return q;
}

double box_angle(const Quad& q) {
    Vec2 e = q[1] - q[0];
    return normalize_angle(e.y, e.x).theta;
}

OrientedBox decode_pixel(Vec2 grid_pixel, const PixelGeometry& g, double scale) {
    require(scale > 0.0, ErrorCode::InvalidArgument, "scale must be positive");
    UnitAngle u = normalize_angle(g.sin_t, g.cos_t);
    double w = g.d_left + g.d_right;
    double h = g.d_top + g.d_bottom;
    require(w > 0.0 && h > 0.0, ErrorCode::ZeroAreaBox,
            "side distances describe a zero-area box");

    Vec2 p = scale * grid_pixel;
    Quad local{{{-g.d_left, -g.d_top},
                {g.d_right, -g.d_top},
                {g.d_right, g.d_bottom},
                {-g.d_left, g.d_bottom}}};
    OrientedBox box;
    for (int i = 0; i < 4; ++i) box.quad[i] = p + rotate(u.sin_t, u.cos_t, local[i]);
    box.angle = u.theta;
    box.score = g.score;
    return box;
}

int encode_box(GeometryMap& map, const Quad& quad, double scale, double shrink) {
    check_encodable(quad);
    Vec2 e = quad[1] - quad[0];
    UnitAngle u = normalize_angle(e.y, e.x);
    return for_each_positive(quad, map.width, map.height, scale, shrink,
                             [&](int gx, int gy, Vec2 p) {
        PixelGeometry g;
        g.score = 1.0;
        g.d_top = edge_distance(p, quad[0], quad[1]);
        g.d_right = edge_distance(p, quad[1], quad[2]);
        g.d_bottom = edge_distance(p, quad[2], quad[3]);
        g.d_left = edge_distance(p, quad[3], quad[0]);
        g.sin_t = u.sin_t;
        g.cos_t = u.cos_t;
        map.set_pixel(gy, gx, g);
    });
}

int count_positive_pixels(const Quad& quad, int grid_width, int grid_height, double scale,
                          double shrink) {
    return for_each_positive(quad, grid_width, grid_height, scale, shrink,
                             [](int, int, Vec2) {});
}

std::vector<OrientedBox> threshold_and_decode(const GeometryMap& map, double threshold,
                                              double scale) {
    std::vector<OrientedBox> out;
    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            double score = map.at(kChScore, y, x);
            if (!(score > threshold)) continue;
            PixelGeometry g = map.pixel(y, x);
            g.d_top = std::max(0.0, g.d_top);
            g.d_left = std::max(0.0, g.d_left);
            g.d_bottom = std::max(0.0, g.d_bottom);
            g.d_right = std::max(0.0, g.d_right);
            // A confident pixel with no usable geometry is noise, not an error.
            if (g.d_left + g.d_right <= 0.0 || g.d_top + g.d_bottom <= 0.0) continue;
            if (std::hypot(g.sin_t, g.cos_t) < kMinAngleNorm) continue;
            out.push_back(decode_pixel({static_cast<double>(x), static_cast<double>(y)}, g,
                                       scale));
        }
    }
    return out;
}

double quad_area(const Quad& q) { return std::abs(signed_area(q)); }

double quad_iou(const Quad& a_in, const Quad& b_in) {
    Quad a = oriented_positive(a_in);
    Quad b = oriented_positive(b_in);
    require(is_convex(a), ErrorCode::NonConvexQuad, "first quad is not convex");
    require(is_convex(b), ErrorCode::NonConvexQuad, "second quad is not convex");

    std::vector<Vec2> inter = clip_with_quad({a.begin(), a.end()}, b);
    double inter_area = inter.empty() ? 0.0 : std::abs(polygon_area(inter));
    double union_area = quad_area(a) + quad_area(b) - inter_area;
    if (union_area <= 0.0) return 0.0;
    return std::clamp(inter_area / union_area, 0.0, 1.0);
}

}  // namespace textspot
