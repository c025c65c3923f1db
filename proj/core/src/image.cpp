#include "veintrack/image.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace veintrack {

namespace {

int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

// Separable binomial blur + factor-2 decimation; the decimated level keeps
// even-indexed pixels, so level coordinates map to parent coordinates as x*2.
Frame blur5_decimate(const Frame& src) {
    static constexpr double kKernel[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
    const int w = src.width;
    const int h = src.height;

    std::vector<double> rows(src.pixel_count());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -2; k <= 2; ++k) {
                acc += kKernel[k + 2] * src.at(clamp_index(x + k, w), y);
            }
            rows[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }

    const int ow = (w + 1) / 2;
    const int oh = (h + 1) / 2;
    Frame out(ow, oh);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int k = -2; k <= 2; ++k) {
                const int sy = clamp_index(2 * y + k, h);
                acc += kKernel[k + 2] * rows[static_cast<std::size_t>(sy) * w + 2 * x];
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

}  // namespace

Frame::Frame(int w, int h, double fill)
    : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
    if (w < 1 || h < 1) {
        throw std::invalid_argument("Frame: dimensions must be at least 1x1");
    }
}

double Frame::at_clamped(int x, int y) const {
    return at(clamp_index(x, width), clamp_index(y, height));
}

FlowField::FlowField(int w, int h)
    : width(w), height(h),
      u(static_cast<std::size_t>(w) * h, 0.0),
      v(static_cast<std::size_t>(w) * h, 0.0) {
    if (w < 1 || h < 1) {
        throw std::invalid_argument("FlowField: dimensions must be at least 1x1");
    }
}

void central_gradients(const Frame& frame, std::vector<double>& gx, std::vector<double>& gy) {
    const int w = frame.width;
    const int h = frame.height;
    gx.assign(frame.pixel_count(), 0.0);
    gy.assign(frame.pixel_count(), 0.0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            gx[i] = 0.5 * (frame.at_clamped(x + 1, y) - frame.at_clamped(x - 1, y));
            gy[i] = 0.5 * (frame.at_clamped(x, y + 1) - frame.at_clamped(x, y - 1));
        }
    }
}

GradientSet compute_gradients(const Frame& frame_t, const Frame& frame_t1) {
    if (!frame_t.same_dims(frame_t1)) {
        throw std::invalid_argument("compute_gradients: frame dimensions differ");
    }
    GradientSet g;
    g.width = frame_t.width;
    g.height = frame_t.height;
    central_gradients(frame_t, g.ix, g.iy);
    g.it.resize(frame_t.pixel_count());
    for (std::size_t i = 0; i < g.it.size(); ++i) {
        g.it[i] = frame_t1.data[i] - frame_t.data[i];
    }
    return g;
}

ImagePyramid build_pyramid(const Frame& frame, int level_count) {
    if (level_count < 1) {
        throw std::invalid_argument("build_pyramid: level_count must be >= 1");
    }
    int w = frame.width;
    int h = frame.height;
    for (int level = 1; level < level_count; ++level) {
        w = (w + 1) / 2;
        h = (h + 1) / 2;
    }
    if (w < 4 || h < 4) {
        throw std::invalid_argument("build_pyramid: coarsest level would be smaller than 4x4 (" +
                                    std::to_string(w) + "x" + std::to_string(h) + ")");
    }

    ImagePyramid pyramid;
    pyramid.levels.reserve(static_cast<std::size_t>(level_count));
    pyramid.levels.push_back(frame);
    for (int level = 1; level < level_count; ++level) {
        pyramid.levels.push_back(blur5_decimate(pyramid.levels.back()));
    }
    return pyramid;
}

double sample_bilinear(std::span<const double> data, int width, int height, double x, double y) {
    x = std::clamp(x, 0.0, static_cast<double>(width - 1));
    y = std::clamp(y, 0.0, static_cast<double>(height - 1));
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const int x1 = std::min(x0 + 1, width - 1);
    const int y1 = std::min(y0 + 1, height - 1);
    const double fx = x - x0;
    const double fy = y - y0;

    const std::size_t r0 = static_cast<std::size_t>(y0) * width;
    const std::size_t r1 = static_cast<std::size_t>(y1) * width;
    const double top = (1.0 - fx) * data[r0 + x0] + fx * data[r0 + x1];
    const double bottom = (1.0 - fx) * data[r1 + x0] + fx * data[r1 + x1];
    return (1.0 - fy) * top + fy * bottom;
}

double sample_bilinear(const Frame& frame, double x, double y) {
    return sample_bilinear(std::span<const double>(frame.data), frame.width, frame.height, x, y);
}

Frame warp_frame(const Frame& frame, const FlowField& flow) {
    if (frame.width != flow.width || frame.height != flow.height) {
        throw std::invalid_argument("warp_frame: frame and flow dimensions differ");
    }
    Frame out(frame.width, frame.height);
    for (int y = 0; y < frame.height; ++y) {
        for (int x = 0; x < frame.width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * frame.width + x;
            out.data[i] = sample_bilinear(frame, x + flow.u[i], y + flow.v[i]);
        }
    }
    return out;
}

FlowField upsample_flow(const FlowField& flow, int target_w, int target_h) {
    if (target_w < flow.width || target_h < flow.height) {
        throw std::invalid_argument("upsample_flow: target smaller than source");
    }
    FlowField out(target_w, target_h);
    const double sx = static_cast<double>(flow.width) / target_w;
    const double sy = static_cast<double>(flow.height) / target_h;
    for (int y = 0; y < target_h; ++y) {
        for (int x = 0; x < target_w; ++x) {
            // pixel-center alignment between the two grids
            const double src_x = (x + 0.5) * sx - 0.5;
            const double src_y = (y + 0.5) * sy - 0.5;
            const std::size_t i = static_cast<std::size_t>(y) * target_w + x;
            out.u[i] = 2.0 * sample_bilinear(flow.u, flow.width, flow.height, src_x, src_y);
            out.v[i] = 2.0 * sample_bilinear(flow.v, flow.width, flow.height, src_x, src_y);
        }
    }
    return out;
}

}  // namespace veintrack
