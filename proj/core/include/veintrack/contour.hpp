#pragma once

#include <filesystem>
#include <vector>

#include "veintrack/metrics.hpp"
#include "veintrack/vec2.hpp"

namespace veintrack {

/// Ordered closed polygon of subpixel points (implicit edge from the last
/// point back to the first) tagged with the frame it belongs to.
struct Contour {
    std::vector<Vec2> points;
    int frame_index = 0;

    int point_count() const { return static_cast<int>(points.size()); }
};

/// Absolute shoelace area of the closed polygon, in pixels^2. Degenerate
/// (collinear) contours yield 0.
double contour_area(const Contour& contour);

/// Even-odd scanline rasterization; a pixel is inside when its center (integer
/// coordinates) lies inside the polygon. Throws if the contour has fewer than
/// three points.
Mask contour_to_mask(const Contour& contour, int width, int height);

/// N points on the axis-aligned ellipse, counter-clockwise from angle 0.
Contour ellipse_contour(double cx, double cy, double a, double b, int n, int frame_index);

/// Text format: header "N=<count> frame=<index>" then one "x,y" line per
/// point, full double precision.
Contour read_contour_file(const std::filesystem::path& path);
void write_contour_file(const std::filesystem::path& path, const Contour& contour);

}  // namespace veintrack
