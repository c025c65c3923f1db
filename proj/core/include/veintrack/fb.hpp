#pragma once

#include "veintrack/image.hpp"

namespace veintrack {

/// Farneback parameters. poly_n is the expansion neighborhood half-width
/// (3 -> 7x7); avg_window is the Gaussian aggregation window length used when
/// solving for displacements, interpreted like the LK window length.
struct FBParams {
    int poly_n = 3;
    double poly_sigma = 1.1;
    int avg_window = 20;
    int level_count = 3;
    double min_det = 1e-9;
    bool symmetric_a = false;  // average A over both expansions instead of A = A_1

    int avg_radius() const { return avg_window / 2; }
    double avg_sigma() const { return avg_window / 4.0; }
};

/// Per-pixel quadratic model f(x) = x^T A x + b^T x + c in coordinates local
/// to the pixel; A is symmetric with axy stored once.
struct PolyExpansion {
    int width = 0;
    int height = 0;
    std::vector<double> axx;
    std::vector<double> axy;
    std::vector<double> ayy;
    std::vector<double> bx;
    std::vector<double> by;
    std::vector<double> c;
};

/// Weighted least-squares quadratic fit around every pixel over the
/// (2*poly_n+1)^2 neighborhood with Gaussian applicability weights; borders
/// replicated. Throws if the frame is smaller than the neighborhood.
PolyExpansion poly_expansion(const Frame& frame, const FBParams& params);

/// Per-pixel displacement d = -1/2 A^-1 (b2 - b1), solved from A^T A and
/// A^T db statistics aggregated over a Gaussian window. Pixels whose
/// aggregated matrix determinant falls below min_det get d = (0,0).
FlowField fb_displacement(const PolyExpansion& exp1, const PolyExpansion& exp2,
                          const FBParams& params);

/// Coarse-to-fine wrapper: at each level frame t+1 is warped by the upsampled
/// flow, both expansions are computed, and the displacement is accumulated.
FlowField fb_flow(const Frame& frame_t, const Frame& frame_t1, const FBParams& params);

}  // namespace veintrack
