#include "veintrack/lk.hpp"

#include <cmath>
#include <stdexcept>

namespace veintrack {

namespace {

struct LevelGradients {
    std::vector<double> gx;
    std::vector<double> gy;
};

// Gaussian window weights, normalized to sum 1.
std::vector<double> window_weights(int radius, double sigma) {
    const int side = 2 * radius + 1;
    std::vector<double> w(static_cast<std::size_t>(side) * side);
    const double inv_2s2 = 1.0 / (2.0 * sigma * sigma);
    double sum = 0.0;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            const double g = std::exp(-(dx * dx + dy * dy) * inv_2s2);
            w[static_cast<std::size_t>(dy + radius) * side + (dx + radius)] = g;
            sum += g;
        }
    }
    for (double& x : w) x /= sum;
    return w;
}

// Iterative refinement at one pyramid level. The window stays centered on the
// point's position in frame t; the running displacement only moves where
// frame t+1 is sampled.
Vec2 refine_at_level(const Frame& frame_t, const Frame& frame_t1, const LevelGradients& grads,
                     std::span<const double> weights, Vec2 center, Vec2 displacement,
                     const LKParams& params) {
    const int r = params.window_radius();
    const int side = 2 * r + 1;
    const int w = frame_t.width;
    const int h = frame_t.height;
    Vec2 d = displacement;

    for (int iter = 0; iter < params.max_iters_per_level; ++iter) {
        StructureTensor tensor;
        for (int dy = -r; dy <= r; ++dy) {
            for (int dx = -r; dx <= r; ++dx) {
                const double weight = weights[static_cast<std::size_t>(dy + r) * side + (dx + r)];
                const double qx = center.x + dx;
                const double qy = center.y + dy;
                const double ix = sample_bilinear(grads.gx, w, h, qx, qy);
                const double iy = sample_bilinear(grads.gy, w, h, qx, qy);
                const double it =
                    sample_bilinear(frame_t1, qx + d.x, qy + d.y) - sample_bilinear(frame_t, qx, qy);
                tensor.sxx += weight * ix * ix;
                tensor.sxy += weight * ix * iy;
                tensor.syy += weight * iy * iy;
                tensor.bx += weight * ix * it;
                tensor.by += weight * iy * it;
            }
        }
        const auto step = lk_solve(tensor, params.min_eigenvalue);
        if (!step) {
            break;  // degenerate window contributes no increment
        }
        d += *step;
        if (step->x * step->x + step->y * step->y <
            params.convergence_eps * params.convergence_eps) {
            break;
        }
    }
    return d;
}

}  // namespace

double StructureTensor::min_eigenvalue() const {
    const double half_trace = 0.5 * (sxx + syy);
    const double diff = 0.5 * (sxx - syy);
    return half_trace - std::sqrt(diff * diff + sxy * sxy);
}

std::optional<Vec2> lk_solve(const StructureTensor& tensor, double min_eigenvalue) {
    if (tensor.min_eigenvalue() < min_eigenvalue) {
        return std::nullopt;
    }
    const double det = tensor.sxx * tensor.syy - tensor.sxy * tensor.sxy;
    return Vec2{(-tensor.bx * tensor.syy + tensor.sxy * tensor.by) / det,
                (-tensor.by * tensor.sxx + tensor.sxy * tensor.bx) / det};
}

std::vector<Vec2> lk_track_points(const ImagePyramid& pyr_t, const ImagePyramid& pyr_t1,
                                  std::span<const Vec2> points, const LKParams& params) {
    if (params.window_len < 3 || params.level_count < 1 || params.convergence_eps <= 0.0) {
        throw std::invalid_argument("lk_track_points: invalid parameters");
    }
    if (pyr_t.level_count() != params.level_count || pyr_t1.level_count() != params.level_count) {
        throw std::invalid_argument("lk_track_points: pyramids not built with params.level_count");
    }
    const Frame& base = pyr_t.levels.front();
    if (!base.same_dims(pyr_t1.levels.front())) {
        throw std::invalid_argument("lk_track_points: pyramid dimensions differ");
    }
    for (const Vec2& p : points) {
        if (p.x < 0.0 || p.y < 0.0 || p.x > base.width - 1 || p.y > base.height - 1) {
            throw std::invalid_argument("lk_track_points: point outside frame");
        }
    }

    const int levels = params.level_count;
    std::vector<LevelGradients> grads(static_cast<std::size_t>(levels));
    for (int level = 0; level < levels; ++level) {
        central_gradients(pyr_t.levels[static_cast<std::size_t>(level)],
                          grads[static_cast<std::size_t>(level)].gx,
                          grads[static_cast<std::size_t>(level)].gy);
    }
    const std::vector<double> weights =
        window_weights(params.window_radius(), params.effective_sigma());

    std::vector<Vec2> tracked;
    tracked.reserve(points.size());
    for (const Vec2& point : points) {
        Vec2 d{0.0, 0.0};
        for (int level = levels - 1; level >= 0; --level) {
            const double scale = std::ldexp(1.0, -level);
            const Vec2 center{point.x * scale, point.y * scale};
            d = refine_at_level(pyr_t.levels[static_cast<std::size_t>(level)],
                                pyr_t1.levels[static_cast<std::size_t>(level)],
                                grads[static_cast<std::size_t>(level)], weights, center, d, params);
            if (level > 0) {
                d.x *= 2.0;
                d.y *= 2.0;
            }
        }
        tracked.push_back(point + d);
    }
    return tracked;
}

Vec2 lk_track_point(const ImagePyramid& pyr_t, const ImagePyramid& pyr_t1, Vec2 point,
                    const LKParams& params) {
    const Vec2 single[1] = {point};
    return lk_track_points(pyr_t, pyr_t1, single, params).front();
}

}  // namespace veintrack
