#pragma once

#include <optional>
#include <span>
#include <vector>

#include "veintrack/image.hpp"
#include "veintrack/vec2.hpp"

namespace veintrack {

/// Pyramidal Lucas-Kanade parameters. window_len is the window length in
/// pixels; the effective window is the centered odd box of 2*(window_len/2)+1
/// pixels per side (20 -> 21x21).
struct LKParams {
    int window_len = 20;
    int level_count = 3;
    int max_iters_per_level = 10;
    double convergence_eps = 0.01;  // pixels
    double min_eigenvalue = 1e-6;   // on the weight-normalized tensor
    double weight_sigma = 0.0;      // <= 0 selects window_len / 4

    int window_radius() const { return window_len / 2; }
    double effective_sigma() const { return weight_sigma > 0.0 ? weight_sigma : window_len / 4.0; }
};

/// Windowed sums of weighted gradient products: the 2x2 system
/// [[sxx,sxy],[sxy,syy]] [u v]^T = -[bx by]^T.
struct StructureTensor {
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    double bx = 0.0;
    double by = 0.0;

    /// Smaller eigenvalue of the symmetric 2x2 matrix.
    double min_eigenvalue() const;
};

/// Solves the 2x2 normal equations. Returns nullopt when the tensor's smaller
/// eigenvalue is below min_eigenvalue (aperture problem); callers treat that
/// as zero displacement.
std::optional<Vec2> lk_solve(const StructureTensor& tensor, double min_eigenvalue);

/// Tracks one point coarse-to-fine through the two pyramids and returns its
/// position in frame t+1. Throws if the point lies outside the level-0 frame
/// or the pyramids were not built with params.level_count levels.
Vec2 lk_track_point(const ImagePyramid& pyr_t, const ImagePyramid& pyr_t1, Vec2 point,
                    const LKParams& params);

/// Batch variant sharing per-level gradient images across points.
std::vector<Vec2> lk_track_points(const ImagePyramid& pyr_t, const ImagePyramid& pyr_t1,
                                  std::span<const Vec2> points, const LKParams& params);

}  // namespace veintrack
