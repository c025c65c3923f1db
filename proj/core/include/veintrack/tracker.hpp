#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "veintrack/contour.hpp"
#include "veintrack/fb.hpp"
#include "veintrack/hs.hpp"
#include "veintrack/lk.hpp"

namespace veintrack {

enum class FlowAlgorithm { lk, hs, fb };

std::string_view to_string(FlowAlgorithm algo);
std::optional<FlowAlgorithm> parse_algorithm(std::string_view name);

struct TrackerConfig {
    FlowAlgorithm algorithm = FlowAlgorithm::lk;
    int point_count = 32;
    LKParams lk;
    HSParams hs;
    FBParams fb;
};

/// Moves every contour point from frame t to frame t+1. LK tracks each point
/// sparsely; HS and FB compute one dense field and sample it bilinearly at
/// the points. Resulting points are clamped to the frame rectangle and the
/// contour's frame index is incremented.
Contour advance(const Contour& contour, const Frame& frame_t, const Frame& frame_t1,
                const TrackerConfig& config);

/// Repeated advance over the whole clip; output[0] is the initial contour
/// verbatim and the result has one contour per frame.
std::vector<Contour> track_sequence(std::span<const Frame> frames, const Contour& initial,
                                    const TrackerConfig& config);

}  // namespace veintrack
