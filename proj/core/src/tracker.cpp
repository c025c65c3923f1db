#include "veintrack/tracker.hpp"

#include <algorithm>
#include <stdexcept>

namespace veintrack {

std::string_view to_string(FlowAlgorithm algo) {
    switch (algo) {
        case FlowAlgorithm::lk: return "lk";
        case FlowAlgorithm::hs: return "hs";
        case FlowAlgorithm::fb: return "fb";
    }
    return "?";
}

std::optional<FlowAlgorithm> parse_algorithm(std::string_view name) {
    if (name == "lk") return FlowAlgorithm::lk;
    if (name == "hs") return FlowAlgorithm::hs;
    if (name == "fb") return FlowAlgorithm::fb;
    return std::nullopt;
}

namespace {

Vec2 clamp_to_frame(Vec2 p, const Frame& frame) {
    return {std::clamp(p.x, 0.0, static_cast<double>(frame.width - 1)),
            std::clamp(p.y, 0.0, static_cast<double>(frame.height - 1))};
}

std::vector<Vec2> move_by_dense_field(const std::vector<Vec2>& points, const FlowField& flow) {
    std::vector<Vec2> moved;
    moved.reserve(points.size());
    for (const Vec2& p : points) {
        const double du = sample_bilinear(flow.u, flow.width, flow.height, p.x, p.y);
        const double dv = sample_bilinear(flow.v, flow.width, flow.height, p.x, p.y);
        moved.push_back({p.x + du, p.y + dv});
    }
    return moved;
}

}  // namespace

Contour advance(const Contour& contour, const Frame& frame_t, const Frame& frame_t1,
                const TrackerConfig& config) {
    if (!frame_t.same_dims(frame_t1)) {
        throw std::invalid_argument("advance: frame dimensions differ");
    }
    if (contour.point_count() < 3) {
        throw std::invalid_argument("advance: contour needs at least 3 points");
    }

    std::vector<Vec2> start;
    start.reserve(contour.points.size());
    for (const Vec2& p : contour.points) {
        start.push_back(clamp_to_frame(p, frame_t));
    }

    std::vector<Vec2> moved;
    switch (config.algorithm) {
        case FlowAlgorithm::lk: {
            const ImagePyramid pyr_t = build_pyramid(frame_t, config.lk.level_count);
            const ImagePyramid pyr_t1 = build_pyramid(frame_t1, config.lk.level_count);
            moved = lk_track_points(pyr_t, pyr_t1, start, config.lk);
            break;
        }
        case FlowAlgorithm::hs:
            moved = move_by_dense_field(start, hs_flow(frame_t, frame_t1, config.hs));
            break;
        case FlowAlgorithm::fb:
            moved = move_by_dense_field(start, fb_flow(frame_t, frame_t1, config.fb));
            break;
    }

    Contour next;
    next.frame_index = contour.frame_index + 1;
    next.points.reserve(moved.size());
    for (const Vec2& p : moved) {
        next.points.push_back(clamp_to_frame(p, frame_t));
    }
    return next;
}

std::vector<Contour> track_sequence(std::span<const Frame> frames, const Contour& initial,
                                    const TrackerConfig& config) {
    if (frames.empty()) {
        throw std::invalid_argument("track_sequence: empty frame sequence");
    }
    if (initial.frame_index != 0) {
        throw std::invalid_argument("track_sequence: initial contour must be at frame 0");
    }
    std::vector<Contour> contours;
    contours.reserve(frames.size());
    contours.push_back(initial);
    for (std::size_t t = 0; t + 1 < frames.size(); ++t) {
        contours.push_back(advance(contours.back(), frames[t], frames[t + 1], config));
    }
    return contours;
}

}  // namespace veintrack
