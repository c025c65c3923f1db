#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace veintrack {

/// Binary region image, row-major; nonzero means inside.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    Mask() = default;
    Mask(int w, int h);

    bool get(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool value) {
        bits[static_cast<std::size_t>(y) * width + x] = value ? 1 : 0;
    }

    /// Number of set pixels.
    std::size_t population() const;
    bool same_dims(const Mask& o) const { return width == o.width && height == o.height; }
    friend bool operator==(const Mask&, const Mask&) = default;
};

/// Sorensen-Dice overlap 2|A∩M| / (|A|+|M|) on pixel counts. Two empty masks
/// agree vacuously and score 1.0. Throws on dimension mismatch.
double dice(const Mask& a, const Mask& m);

/// Per-frame agreement series with the failure cutoff.
struct DiceSeries {
    std::vector<double> values;
    double failure_threshold = 0.7;
};

struct FailureCheck {
    bool failed = false;
    int first_failing_frame = -1;
};

/// Failure iff any value is strictly below the threshold; reports the earliest
/// such frame. Throws on an empty series.
FailureCheck detect_failure(const DiceSeries& series);

struct DiceSummary {
    std::vector<double> mean_curve;      // over the common prefix of all series
    std::vector<double> per_series_mean;
    int success_count = 0;               // series with no failure
};

DiceSummary aggregate(std::span<const DiceSeries> series_set);

}  // namespace veintrack
