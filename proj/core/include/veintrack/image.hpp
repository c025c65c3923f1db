#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace veintrack {

/// Single-channel intensity image, row-major. Frames produced by the library's
/// ingest paths (PGM load, phantom synthesis) carry intensities in [0,1];
/// arithmetic helpers do not assume a range.
struct Frame {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Frame() = default;
    Frame(int w, int h, double fill = 0.0);

    double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    /// Value at (x,y) with integer coordinates clamped to the frame rectangle.
    double at_clamped(int x, int y) const;

    std::size_t pixel_count() const { return data.size(); }
    bool same_dims(const Frame& o) const { return width == o.width && height == o.height; }
    friend bool operator==(const Frame&, const Frame&) = default;
};

/// Spatial derivatives of frame t plus the temporal difference to frame t+1.
struct GradientSet {
    int width = 0;
    int height = 0;
    std::vector<double> ix;
    std::vector<double> iy;
    std::vector<double> it;
};

/// Multi-resolution stack. Level 0 is full resolution; level k+1 is level k
/// blurred and decimated by two, with ceil-halved dimensions.
struct ImagePyramid {
    std::vector<Frame> levels;
    int level_count() const { return static_cast<int>(levels.size()); }
};

/// Dense per-pixel displacement field (pixels); u horizontal, v vertical.
struct FlowField {
    int width = 0;
    int height = 0;
    std::vector<double> u;
    std::vector<double> v;

    FlowField() = default;
    FlowField(int w, int h);

    bool same_dims(const FlowField& o) const { return width == o.width && height == o.height; }
};

/// ix, iy by central differences on frame_t (replicated borders);
/// it = frame_t1 - frame_t. Throws std::invalid_argument on dimension mismatch.
GradientSet compute_gradients(const Frame& frame_t, const Frame& frame_t1);

/// Central differences of a single frame, replicated borders.
void central_gradients(const Frame& frame, std::vector<double>& gx, std::vector<double>& gy);

/// Each level: separable [1,4,6,4,1]/16 blur (replicated borders) then
/// factor-2 decimation. Throws if any level would fall below 4x4.
ImagePyramid build_pyramid(const Frame& frame, int level_count);

/// Bilinear sample at subpixel (x,y); out-of-range coordinates are clamped to
/// the frame rectangle. Exact at integer coordinates.
double sample_bilinear(const Frame& frame, double x, double y);
double sample_bilinear(std::span<const double> data, int width, int height, double x, double y);

/// output(p) = frame sampled at p + flow(p). Backward-warps frame t+1 into
/// the coordinates of frame t when given the t -> t+1 flow.
Frame warp_frame(const Frame& frame, const FlowField& flow);

/// Bilinear-resize both components to the target dimensions and double them
/// (displacements measured in the finer level's pixels). Target must not be
/// smaller than the source.
FlowField upsample_flow(const FlowField& flow, int target_w, int target_h);

}  // namespace veintrack
