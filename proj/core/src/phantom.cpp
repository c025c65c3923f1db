#include "veintrack/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "veintrack/rng.hpp"

namespace veintrack {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool in_wedge(double angle, const ShadowParams& shadow) {
    double d = std::fmod(angle - shadow.angle_start, kTwoPi);
    if (d < 0.0) d += kTwoPi;
    return d < shadow.angle_extent;
}

double clean_value(const PhantomConfig& cfg, const EllipseState& e, double x, double y) {
    const double dx = x - e.cx;
    const double dy = y - e.cy;
    const double rin = (dx / e.a) * (dx / e.a) + (dy / e.b) * (dy / e.b);
    double value;
    if (rin <= 1.0) {
        value = cfg.interior_level;
    } else {
        const double ao = e.a + cfg.wall_thickness;
        const double bo = e.b + cfg.wall_thickness;
        const double rout = (dx / ao) * (dx / ao) + (dy / bo) * (dy / bo);
        value = rout <= 1.0 ? cfg.wall_level : cfg.background_level;
    }
    if (cfg.shadow && in_wedge(std::atan2(dy, dx), *cfg.shadow)) {
        value *= 1.0 - cfg.shadow->attenuation;
    }
    return value;
}

// Correlated multiplicative noise: raw uniform noise of the configured scale,
// box-smoothed 3x3 (replicated borders).
std::vector<double> speckle_field(const PhantomConfig& cfg, int frame_index) {
    const std::size_t count = static_cast<std::size_t>(cfg.width) * cfg.height;
    std::vector<double> raw(count);
    SplitMix64 rng(cfg.seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(frame_index + 1));
    const double scale = cfg.speckle_sigma * std::numbers::sqrt3;  // uniform: std = scale/sqrt(3)
    for (double& r : raw) {
        r = scale * rng.uniform_pm1();
    }

    std::vector<double> smooth(count);
    const int w = cfg.width;
    const int h = cfg.height;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int sx = std::clamp(x + dx, 0, w - 1);
                    const int sy = std::clamp(y + dy, 0, h - 1);
                    acc += raw[static_cast<std::size_t>(sy) * w + sx];
                }
            }
            smooth[static_cast<std::size_t>(y) * w + x] = acc / 9.0;
        }
    }
    return smooth;
}

}  // namespace

void validate(const PhantomConfig& cfg) {
    if (cfg.width < 8 || cfg.height < 8 || cfg.frame_count < 1 || cfg.fps <= 0.0) {
        throw std::invalid_argument("phantom: bad frame geometry or rate");
    }
    if (cfg.semi_axis_a <= 0.0 || cfg.semi_axis_b <= 0.0 || cfg.wall_thickness < 0.0) {
        throw std::invalid_argument("phantom: bad vessel geometry");
    }
    if (cfg.pulsation_amplitude < 0.0 || cfg.pulsation_amplitude >= 1.0) {
        throw std::invalid_argument("phantom: pulsation amplitude must be in [0,1)");
    }
    if (!(cfg.interior_level < cfg.background_level && cfg.background_level < cfg.wall_level)) {
        throw std::invalid_argument(
            "phantom: levels must satisfy interior < background < wall");
    }
    if (cfg.speckle_sigma < 0.0) {
        throw std::invalid_argument("phantom: speckle_sigma must be nonnegative");
    }
    if (cfg.contour_points < 3) {
        throw std::invalid_argument("phantom: contour_points must be >= 3");
    }
    if (cfg.shadow &&
        (cfg.shadow->attenuation < 0.0 || cfg.shadow->attenuation > 1.0 ||
         cfg.shadow->angle_extent <= 0.0)) {
        throw std::invalid_argument("phantom: bad shadow parameters");
    }
    for (int t = 0; t < cfg.frame_count; ++t) {
        const EllipseState e = vessel_state(cfg, t);
        const double ao = e.a + cfg.wall_thickness;
        const double bo = e.b + cfg.wall_thickness;
        if (e.cx - ao < 0.0 || e.cx + ao > cfg.width - 1 || e.cy - bo < 0.0 ||
            e.cy + bo > cfg.height - 1) {
            throw std::invalid_argument("phantom: vessel exits frame at frame " +
                                        std::to_string(t));
        }
    }
}

EllipseState vessel_state(const PhantomConfig& cfg, int frame_index) {
    const double phase = kTwoPi * cfg.pulsation_hz * frame_index / cfg.fps;
    const double pulse = 1.0 + cfg.pulsation_amplitude * std::sin(phase);
    return {cfg.center_x + cfg.drift_x * frame_index,
            cfg.center_y + cfg.drift_y * frame_index,
            cfg.semi_axis_a * pulse,
            cfg.semi_axis_b * pulse};
}

Frame phantom_frame(const PhantomConfig& cfg, int frame_index) {
    if (frame_index < 0 || frame_index >= cfg.frame_count) {
        throw std::invalid_argument("phantom_frame: frame index out of range");
    }
    const EllipseState e = vessel_state(cfg, frame_index);

    Frame frame(cfg.width, cfg.height);
    // 3x3 supersampling softens the wall edge by about a pixel so subpixel
    // boundary motion shows up in the intensities.
    static constexpr double kOffsets[3] = {-1.0 / 3.0, 0.0, 1.0 / 3.0};
    for (int y = 0; y < cfg.height; ++y) {
        for (int x = 0; x < cfg.width; ++x) {
            double acc = 0.0;
            for (double oy : kOffsets) {
                for (double ox : kOffsets) {
                    acc += clean_value(cfg, e, x + ox, y + oy);
                }
            }
            frame.at(x, y) = acc / 9.0;
        }
    }

    if (cfg.speckle_sigma > 0.0) {
        const std::vector<double> eta = speckle_field(cfg, frame_index);
        for (std::size_t i = 0; i < frame.data.size(); ++i) {
            frame.data[i] = std::clamp(frame.data[i] * (1.0 + eta[i]), 0.0, 1.0);
        }
    }
    return frame;
}

Contour truth_contour(const PhantomConfig& cfg, int frame_index) {
    if (frame_index < 0 || frame_index >= cfg.frame_count) {
        throw std::invalid_argument("truth_contour: frame index out of range");
    }
    const EllipseState e = vessel_state(cfg, frame_index);
    return ellipse_contour(e.cx, e.cy, e.a, e.b, cfg.contour_points, frame_index);
}

Mask truth_mask(const PhantomConfig& cfg, int frame_index) {
    if (frame_index < 0 || frame_index >= cfg.frame_count) {
        throw std::invalid_argument("truth_mask: frame index out of range");
    }
    const EllipseState e = vessel_state(cfg, frame_index);
    Mask mask(cfg.width, cfg.height);
    for (int y = 0; y < cfg.height; ++y) {
        for (int x = 0; x < cfg.width; ++x) {
            const double dx = (x - e.cx) / e.a;
            const double dy = (y - e.cy) / e.b;
            mask.set(x, y, dx * dx + dy * dy <= 1.0);
        }
    }
    return mask;
}

PhantomOutput generate(const PhantomConfig& cfg) {
    validate(cfg);
    PhantomOutput out;
    out.frames.reserve(static_cast<std::size_t>(cfg.frame_count));
    out.truth.contours.reserve(static_cast<std::size_t>(cfg.frame_count));
    out.truth.masks.reserve(static_cast<std::size_t>(cfg.frame_count));
    for (int t = 0; t < cfg.frame_count; ++t) {
        out.frames.push_back(phantom_frame(cfg, t));
        out.truth.contours.push_back(truth_contour(cfg, t));
        out.truth.masks.push_back(truth_mask(cfg, t));
    }
    return out;
}

}  // namespace veintrack
