#pragma once

#include <vector>

#include "textspot/tensor_io.hpp"
#include "textspot/types.hpp"

namespace textspot {

inline constexpr double kDefaultScoreThreshold = 0.9;
inline constexpr double kDefaultShrink = 0.6;
inline constexpr double kDefaultScale = 4.0;

// Channel layout of a geometry map tensor [7, height, width].
enum GeoChannel : int {
    kChScore = 0,
    kChTop = 1,
    kChLeft = 2,
    kChBottom = 3,
    kChRight = 4,
    kChSin = 5,
    kChCos = 6,
};

inline constexpr int kGeoChannels = 7;

struct PixelGeometry {
    double score = 0.0;
    double d_top = 0.0, d_left = 0.0, d_bottom = 0.0, d_right = 0.0;
    double sin_t = 0.0, cos_t = 1.0;
};

struct OrientedBox {
    Quad quad{};
    double angle = 0.0;
    double score = 0.0;
};

// Per-pixel text geometry on a grid `scale` times coarser than the image.
// Grid pixel (px, py) corresponds to image point (scale*px, scale*py).
struct GeometryMap {
    int width = 0;
    int height = 0;
    Tensor channels;  // [7, height, width]

    static GeometryMap zeros(int width, int height);
    static GeometryMap from_tensor(Tensor t);  // validates shape [7, h, w]

    double at(int channel, int y, int x) const {
        return channels.data[(static_cast<std::size_t>(channel) * height + y) * width + x];
    }
    double& at(int channel, int y, int x) {
        return channels.data[(static_cast<std::size_t>(channel) * height + y) * width + x];
    }

    PixelGeometry pixel(int y, int x) const;
    void set_pixel(int y, int x, const PixelGeometry& g);
};

struct UnitAngle {
    double sin_t = 0.0;
    double cos_t = 1.0;
    double theta = 0.0;
};

// Rescales a raw (sin, cos) prediction onto the unit circle.  Throws
// DegenerateAngle when the vector is too short to carry a direction.
UnitAngle normalize_angle(double sin_t, double cos_t);

// Unit vector for an angle wrapped into (-pi, pi]; -pi and pi produce
// identical output so equivalent angles compare equal bit-for-bit.
UnitAngle unit_angle(double theta);

// Axis-aligned-then-rotated rectangle: center, full width along the reading
// direction, full height, rotation theta (clockwise on screen).
Quad make_box_quad(Vec2 center, double width, double height, double theta);

// Rotation angle of a quad's top edge.
double box_angle(const Quad& q);

// Reconstructs the world-space box seen from one grid pixel.  Throws
// ZeroAreaBox when either side-distance pair sums to zero and DegenerateAngle
// for a near-zero (sin, cos).
OrientedBox decode_pixel(Vec2 grid_pixel, const PixelGeometry& g, double scale);

// Rasterizes a word quad into the 7-channel map.  Pixels whose image-space
// points fall inside the quad shrunk by `shrink` about its centroid become
// positive and store distances to the four unshrunk edges plus the unit
// angle.  Returns the number of positive pixels written; 0 means the shrunk
// quad missed every grid point and the map is unchanged.  Throws
// NonConvexQuad / DegenerateQuad on bad input.
int encode_box(GeometryMap& map, const Quad& quad, double scale = kDefaultScale,
               double shrink = kDefaultShrink);

// Number of grid points encode_box would mark positive, without writing.
int count_positive_pixels(const Quad& quad, int grid_width, int grid_height,
                          double scale = kDefaultScale, double shrink = kDefaultShrink);

// Decodes every pixel with score > threshold, in row-major order.  Pixels
// that decode to degenerate boxes are skipped; negative distances clamp to 0.
std::vector<OrientedBox> threshold_and_decode(const GeometryMap& map, double threshold,
                                              double scale = kDefaultScale);

double quad_area(const Quad& q);

// Intersection-over-union of two convex quads (exact polygon clipping).
double quad_iou(const Quad& a, const Quad& b);

}  // namespace textspot
