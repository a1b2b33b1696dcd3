#include "textspot/types.hpp"

namespace textspot {

double polygon_area(std::span<const Vec2> pts) {
    if (pts.size() < 3) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[(i + 1) % pts.size()];
        s += cross(a, b);
    }
    return 0.5 * s;
}

bool is_convex(const Quad& q) {
    // All turns the same way and none of the edges degenerate to a point.
    int sign = 0;
    for (int i = 0; i < 4; ++i) {
        Vec2 e1 = q[(i + 1) % 4] - q[i];
        Vec2 e2 = q[(i + 2) % 4] - q[(i + 1) % 4];
        double c = cross(e1, e2);
        if (c == 0.0) continue;
        int s = c > 0.0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign) return false;
    }
    return sign != 0;
}

bool point_in_quad(Vec2 p, const Quad& q) {
    for (int i = 0; i < 4; ++i) {
        Vec2 a = q[i];
        Vec2 b = q[(i + 1) % 4];
        if (cross(b - a, p - a) < 0.0) return false;
    }
    return true;
}

}  // namespace textspot
