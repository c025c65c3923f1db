#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "veintrack/contour.hpp"
#include "veintrack/image.hpp"
#include "veintrack/metrics.hpp"

namespace veintrack {

/// Acoustic-shadow wedge: intensities inside the angular sector (measured from
/// the vessel center) are multiplied by (1 - attenuation).
struct ShadowParams {
    double angle_start = -2.6;   // radians, from positive x axis
    double angle_extent = 1.2;   // radians
    double attenuation = 0.9;    // 0 = none, 1 = fully obscured
};

/// Synthetic ultrasound-like clip: dark elliptical vessel lumen with a bright
/// wall inside speckled tissue. Semi-axes pulse sinusoidally, the center may
/// drift, and an optional shadow wedge obscures part of the wall.
struct PhantomConfig {
    int width = 256;
    int height = 256;
    int frame_count = 450;
    double fps = 30.0;

    double center_x = 128.0;
    double center_y = 128.0;
    double semi_axis_a = 40.0;
    double semi_axis_b = 28.0;
    double pulsation_amplitude = 0.08;  // fraction of the semi-axes, in [0,1)
    double pulsation_hz = 1.0;
    double drift_x = 0.0;  // px/frame
    double drift_y = 0.0;

    double interior_level = 0.15;
    double wall_level = 0.75;
    double background_level = 0.45;
    double wall_thickness = 4.0;
    double speckle_sigma = 0.10;  // multiplicative noise scale before smoothing

    std::optional<ShadowParams> shadow;
    std::uint64_t seed = 1;
    int contour_points = 32;
};

/// Analytic vessel geometry at one frame.
struct EllipseState {
    double cx = 0.0;
    double cy = 0.0;
    double a = 0.0;
    double b = 0.0;
};

/// Ground truth for every frame of a generated clip.
struct PhantomTruth {
    std::vector<Contour> contours;
    std::vector<Mask> masks;
};

struct PhantomOutput {
    std::vector<Frame> frames;
    PhantomTruth truth;
};

/// Throws std::invalid_argument when levels are inconsistent, the pulsation
/// fraction is out of range, or the vessel (wall included) ever leaves the
/// frame.
void validate(const PhantomConfig& config);

EllipseState vessel_state(const PhantomConfig& config, int frame_index);

/// One frame, deterministic in (config, frame_index); frames can be
/// synthesized in any order or concurrently.
Frame phantom_frame(const PhantomConfig& config, int frame_index);

/// Ground-truth contour: contour_points points on the analytic ellipse.
Contour truth_contour(const PhantomConfig& config, int frame_index);

/// Ground-truth mask by the pixel-center inside-ellipse test.
Mask truth_mask(const PhantomConfig& config, int frame_index);

/// Whole clip plus truth; equivalent to calling the per-frame functions for
/// every index.
PhantomOutput generate(const PhantomConfig& config);

}  // namespace veintrack
