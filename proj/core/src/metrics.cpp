#include "veintrack/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace veintrack {

Mask::Mask(int w, int h)
    : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {
    if (w < 1 || h < 1) {
        throw std::invalid_argument("Mask: dimensions must be at least 1x1");
    }
}

std::size_t Mask::population() const {
    return static_cast<std::size_t>(std::count_if(bits.begin(), bits.end(),
                                                  [](std::uint8_t b) { return b != 0; }));
}

double dice(const Mask& a, const Mask& m) {
    if (!a.same_dims(m)) {
        throw std::invalid_argument("dice: mask dimensions differ");
    }
    std::size_t pop_a = 0, pop_m = 0, both = 0;
    for (std::size_t i = 0; i < a.bits.size(); ++i) {
        const bool in_a = a.bits[i] != 0;
        const bool in_m = m.bits[i] != 0;
        pop_a += in_a;
        pop_m += in_m;
        both += in_a && in_m;
    }
    if (pop_a + pop_m == 0) {
        return 1.0;  // vacuous agreement
    }
    return 2.0 * static_cast<double>(both) / static_cast<double>(pop_a + pop_m);
}

FailureCheck detect_failure(const DiceSeries& series) {
    if (series.values.empty()) {
        throw std::invalid_argument("detect_failure: empty series");
    }
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (series.values[i] < series.failure_threshold) {
            return {true, static_cast<int>(i)};
        }
    }
    return {false, -1};
}

DiceSummary aggregate(std::span<const DiceSeries> series_set) {
    if (series_set.empty()) {
        throw std::invalid_argument("aggregate: empty series set");
    }
    std::size_t prefix = series_set.front().values.size();
    for (const DiceSeries& s : series_set) {
        prefix = std::min(prefix, s.values.size());
    }

    DiceSummary summary;
    summary.mean_curve.assign(prefix, 0.0);
    for (const DiceSeries& s : series_set) {
        for (std::size_t i = 0; i < prefix; ++i) {
            summary.mean_curve[i] += s.values[i];
        }
        const double mean =
            std::accumulate(s.values.begin(), s.values.end(), 0.0) /
            static_cast<double>(s.values.size());
        summary.per_series_mean.push_back(mean);
        if (!detect_failure(s).failed) {
            ++summary.success_count;
        }
    }
    for (double& v : summary.mean_curve) {
        v /= static_cast<double>(series_set.size());
    }
    return summary;
}

}  // namespace veintrack
