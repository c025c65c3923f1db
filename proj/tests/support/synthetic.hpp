// Synthetic inputs with analytically known behavior: band-limited textures
// that can be rendered at any real-valued shift, Gaussian blobs, and random
// masks/fields for property tests.

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "veintrack/image.hpp"
#include "veintrack/metrics.hpp"

namespace synthetic {

// Sum of random sinusoids, band-limited so bilinear resampling and pyramid
// decimation behave well. value() is defined on all of R^2, which makes
// exact subpixel translations trivial: render(shift) evaluates at x - shift.
class SinusoidTexture {
public:
    explicit SinusoidTexture(unsigned seed, int components = 24) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
        std::uniform_real_distribution<double> wavelength(7.0, 24.0);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.14159265358979323846);
        const double amplitude = 0.42 / components;
        for (int i = 0; i < components; ++i) {
            const double theta = angle(rng);
            const double freq = 2.0 * 3.14159265358979323846 / wavelength(rng);
            waves_.push_back({amplitude, freq * std::cos(theta), freq * std::sin(theta),
                              phase(rng)});
        }
    }

    double value(double x, double y) const {
        double v = 0.5;
        for (const Wave& w : waves_) {
            v += w.amp * std::sin(w.fx * x + w.fy * y + w.phase);
        }
        return v;
    }

    veintrack::Frame render(int width, int height, double shift_x = 0.0,
                            double shift_y = 0.0) const {
        veintrack::Frame f(width, height);
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                f.at(x, y) = value(x - shift_x, y - shift_y);
            }
        }
        return f;
    }

private:
    struct Wave {
        double amp, fx, fy, phase;
    };
    std::vector<Wave> waves_;
};

inline veintrack::Frame gaussian_blob(int width, int height, double cx, double cy, double sigma,
                                      double amplitude, double background) {
    veintrack::Frame f(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double d2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
            f.at(x, y) = background + amplitude * std::exp(-d2 / (2.0 * sigma * sigma));
        }
    }
    return f;
}

inline veintrack::Frame constant_frame(int width, int height, double value) {
    return veintrack::Frame(width, height, value);
}

inline veintrack::Frame checkerboard(int width, int height) {
    veintrack::Frame f(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            f.at(x, y) = static_cast<double>((x + y) & 1);
        }
    }
    return f;
}

inline veintrack::Frame random_frame(std::mt19937_64& rng, int width, int height) {
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    veintrack::Frame f(width, height);
    for (double& v : f.data) v = dist(rng);
    return f;
}

inline veintrack::Mask random_mask(std::mt19937_64& rng, int width, int height,
                                   double density = 0.5) {
    std::bernoulli_distribution dist(density);
    veintrack::Mask m(width, height);
    for (auto& b : m.bits) b = dist(rng) ? 1 : 0;
    return m;
}

inline veintrack::FlowField random_field(std::mt19937_64& rng, int width, int height,
                                         double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    veintrack::FlowField f(width, height);
    for (double& v : f.u) v = dist(rng);
    for (double& v : f.v) v = dist(rng);
    return f;
}

// Smooth low-frequency field, suitable for warp oracles.
inline veintrack::FlowField smooth_field(unsigned seed, int width, int height, double scale) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 6.28318);
    const double px = phase(rng), py = phase(rng), qx = phase(rng), qy = phase(rng);
    veintrack::FlowField f(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * width + x;
            f.u[i] = scale * std::sin(0.11 * x + px) * std::cos(0.07 * y + py);
            f.v[i] = scale * std::cos(0.09 * x + qx) * std::sin(0.13 * y + qy);
        }
    }
    return f;
}

}  // namespace synthetic
