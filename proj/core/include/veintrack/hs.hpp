#pragma once

#include "veintrack/image.hpp"

namespace veintrack {

/// Horn-Schunck parameters. iterations is applied per pyramid level.
struct HSParams {
    double alpha = 1.0;
    int iterations = 250;
    int level_count = 3;
};

/// Per-component convolution with the classical Horn-Schunck averaging kernel
/// [[1/12,1/6,1/12],[1/6,0,1/6],[1/12,1/6,1/12]], replicated borders.
FlowField neighborhood_average(const FlowField& field);

/// One simultaneous (Jacobi) update of every pixel:
///   u' = ubar - Ix (Ix ubar + Iy vbar + It) / (alpha^2 + Ix^2 + Iy^2)
/// and the symmetric expression for v'.
FlowField hs_iterate(const GradientSet& grads, const FlowField& field, double alpha);

/// Dense coarse-to-fine flow. At every level the running flow warps frame t+1
/// back onto frame t, the iterations then solve for the residual motion on the
/// warped pair, and the residual is added to the running flow.
FlowField hs_flow(const Frame& frame_t, const Frame& frame_t1, const HSParams& params);

}  // namespace veintrack
