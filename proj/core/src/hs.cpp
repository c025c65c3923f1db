#include "veintrack/hs.hpp"

#include <stdexcept>

namespace veintrack {

namespace {

void average_component(const std::vector<double>& src, std::vector<double>& dst, int w, int h) {
    auto clamped = [&](int x, int y) {
        x = x < 0 ? 0 : (x >= w ? w - 1 : x);
        y = y < 0 ? 0 : (y >= h ? h - 1 : y);
        return src[static_cast<std::size_t>(y) * w + x];
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double orth = clamped(x - 1, y) + clamped(x + 1, y) + clamped(x, y - 1) +
                                clamped(x, y + 1);
            const double diag = clamped(x - 1, y - 1) + clamped(x + 1, y - 1) +
                                clamped(x - 1, y + 1) + clamped(x + 1, y + 1);
            dst[static_cast<std::size_t>(y) * w + x] = orth / 6.0 + diag / 12.0;
        }
    }
}

}  // namespace

FlowField neighborhood_average(const FlowField& field) {
    FlowField out(field.width, field.height);
    average_component(field.u, out.u, field.width, field.height);
    average_component(field.v, out.v, field.width, field.height);
    return out;
}

FlowField hs_iterate(const GradientSet& grads, const FlowField& field, double alpha) {
    if (grads.width != field.width || grads.height != field.height) {
        throw std::invalid_argument("hs_iterate: gradient and field dimensions differ");
    }
    const FlowField bar = neighborhood_average(field);
    FlowField out(field.width, field.height);
    const double alpha2 = alpha * alpha;
    for (std::size_t i = 0; i < out.u.size(); ++i) {
        const double ix = grads.ix[i];
        const double iy = grads.iy[i];
        const double common =
            (ix * bar.u[i] + iy * bar.v[i] + grads.it[i]) / (alpha2 + ix * ix + iy * iy);
        out.u[i] = bar.u[i] - ix * common;
        out.v[i] = bar.v[i] - iy * common;
    }
    return out;
}

FlowField hs_flow(const Frame& frame_t, const Frame& frame_t1, const HSParams& params) {
    if (!frame_t.same_dims(frame_t1)) {
        throw std::invalid_argument("hs_flow: frame dimensions differ");
    }
    if (params.alpha <= 0.0 || params.iterations < 1 || params.level_count < 1) {
        throw std::invalid_argument("hs_flow: invalid parameters");
    }

    const ImagePyramid pyr_t = build_pyramid(frame_t, params.level_count);
    const ImagePyramid pyr_t1 = build_pyramid(frame_t1, params.level_count);

    FlowField flow;
    for (int level = params.level_count - 1; level >= 0; --level) {
        const Frame& level_t = pyr_t.levels[static_cast<std::size_t>(level)];
        const Frame& level_t1 = pyr_t1.levels[static_cast<std::size_t>(level)];
        if (level == params.level_count - 1) {
            flow = FlowField(level_t.width, level_t.height);
        } else {
            flow = upsample_flow(flow, level_t.width, level_t.height);
        }

        // Re-linearize around the current flow: warp frame t+1 back by it and
        // fold the linearization point into the temporal term, so the
        // iterations evolve the total field (slope constraint
        // Ix u + Iy v + [it_warped - Ix u0 - Iy v0] = 0) while the smoothness
        // term keeps acting on the total field it inherited from the coarser
        // level.
        const Frame warped = warp_frame(level_t1, flow);
        GradientSet grads = compute_gradients(level_t, warped);
        for (std::size_t i = 0; i < grads.it.size(); ++i) {
            grads.it[i] -= grads.ix[i] * flow.u[i] + grads.iy[i] * flow.v[i];
        }
        for (int m = 0; m < params.iterations; ++m) {
            flow = hs_iterate(grads, flow, params.alpha);
        }
    }
    return flow;
}

}  // namespace veintrack
