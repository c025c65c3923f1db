#include "veintrack/fb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>

namespace veintrack {

namespace {

constexpr int kCoefCount = 6;  // basis [1, x, y, x^2, y^2, xy]

std::vector<double> gaussian_taps(int radius, double sigma) {
    std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double g = std::exp(-(k * k) / (2.0 * sigma * sigma));
        taps[static_cast<std::size_t>(k + radius)] = g;
        sum += g;
    }
    for (double& t : taps) t /= sum;
    return taps;
}

// Gauss-Jordan inverse with partial pivoting; the applicability Gram matrix
// is small and well conditioned for any sane poly_sigma.
std::array<double, kCoefCount * kCoefCount> invert6(
    std::array<double, kCoefCount * kCoefCount> m) {
    std::array<double, kCoefCount * kCoefCount> inv{};
    for (int i = 0; i < kCoefCount; ++i) inv[static_cast<std::size_t>(i) * kCoefCount + i] = 1.0;

    for (int col = 0; col < kCoefCount; ++col) {
        int pivot = col;
        for (int r = col + 1; r < kCoefCount; ++r) {
            if (std::abs(m[static_cast<std::size_t>(r) * kCoefCount + col]) >
                std::abs(m[static_cast<std::size_t>(pivot) * kCoefCount + col])) {
                pivot = r;
            }
        }
        if (m[static_cast<std::size_t>(pivot) * kCoefCount + col] == 0.0) {
            throw std::runtime_error("poly_expansion: singular applicability Gram matrix");
        }
        if (pivot != col) {
            for (int k = 0; k < kCoefCount; ++k) {
                std::swap(m[static_cast<std::size_t>(pivot) * kCoefCount + k],
                          m[static_cast<std::size_t>(col) * kCoefCount + k]);
                std::swap(inv[static_cast<std::size_t>(pivot) * kCoefCount + k],
                          inv[static_cast<std::size_t>(col) * kCoefCount + k]);
            }
        }
        const double d = m[static_cast<std::size_t>(col) * kCoefCount + col];
        for (int k = 0; k < kCoefCount; ++k) {
            m[static_cast<std::size_t>(col) * kCoefCount + k] /= d;
            inv[static_cast<std::size_t>(col) * kCoefCount + k] /= d;
        }
        for (int r = 0; r < kCoefCount; ++r) {
            if (r == col) continue;
            const double f = m[static_cast<std::size_t>(r) * kCoefCount + col];
            if (f == 0.0) continue;
            for (int k = 0; k < kCoefCount; ++k) {
                m[static_cast<std::size_t>(r) * kCoefCount + k] -=
                    f * m[static_cast<std::size_t>(col) * kCoefCount + k];
                inv[static_cast<std::size_t>(r) * kCoefCount + k] -=
                    f * inv[static_cast<std::size_t>(col) * kCoefCount + k];
            }
        }
    }
    return inv;
}

std::array<double, kCoefCount * kCoefCount> gram_inverse(int n, std::span<const double> taps) {
    std::array<double, kCoefCount * kCoefCount> gram{};
    for (int dy = -n; dy <= n; ++dy) {
        for (int dx = -n; dx <= n; ++dx) {
            const double w = taps[static_cast<std::size_t>(dx + n)] *
                             taps[static_cast<std::size_t>(dy + n)];
            const double phi[kCoefCount] = {1.0,
                                            static_cast<double>(dx),
                                            static_cast<double>(dy),
                                            static_cast<double>(dx) * dx,
                                            static_cast<double>(dy) * dy,
                                            static_cast<double>(dx) * dy};
            for (int i = 0; i < kCoefCount; ++i) {
                for (int j = 0; j < kCoefCount; ++j) {
                    gram[static_cast<std::size_t>(i) * kCoefCount + j] += w * phi[i] * phi[j];
                }
            }
        }
    }
    return invert6(gram);
}

// Separable Gaussian smoothing with replicated borders; weights sum to 1 so
// constants pass through unchanged.
void gaussian_blur(std::vector<double>& img, int w, int h, std::span<const double> taps) {
    const int radius = (static_cast<int>(taps.size()) - 1) / 2;
    std::vector<double> tmp(img.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int sx = std::clamp(x + k, 0, w - 1);
                acc += taps[static_cast<std::size_t>(k + radius)] *
                       img[static_cast<std::size_t>(y) * w + sx];
            }
            tmp[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int sy = std::clamp(y + k, 0, h - 1);
                acc += taps[static_cast<std::size_t>(k + radius)] *
                       tmp[static_cast<std::size_t>(sy) * w + x];
            }
            img[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
}

}  // namespace

PolyExpansion poly_expansion(const Frame& frame, const FBParams& params) {
    const int n = params.poly_n;
    if (n < 1 || params.poly_sigma <= 0.0) {
        throw std::invalid_argument("poly_expansion: invalid parameters");
    }
    if (frame.width < 2 * n + 1 || frame.height < 2 * n + 1) {
        throw std::invalid_argument("poly_expansion: frame smaller than expansion neighborhood");
    }
    const int w = frame.width;
    const int h = frame.height;
    const std::vector<double> taps = gaussian_taps(n, params.poly_sigma);
    const auto ginv = gram_inverse(n, taps);

    // vertical moments in dy^0, dy^1, dy^2
    const std::size_t count = frame.pixel_count();
    std::vector<double> t0(count), t1(count), t2(count);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double m0 = 0.0, m1 = 0.0, m2 = 0.0;
            for (int dy = -n; dy <= n; ++dy) {
                const int sy = std::clamp(y + dy, 0, h - 1);
                const double wv = taps[static_cast<std::size_t>(dy + n)] *
                                  frame.data[static_cast<std::size_t>(sy) * w + x];
                m0 += wv;
                m1 += wv * dy;
                m2 += wv * dy * dy;
            }
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            t0[i] = m0;
            t1[i] = m1;
            t2[i] = m2;
        }
    }

    PolyExpansion out;
    out.width = w;
    out.height = h;
    out.axx.resize(count);
    out.axy.resize(count);
    out.ayy.resize(count);
    out.bx.resize(count);
    out.by.resize(count);
    out.c.resize(count);

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double s00 = 0.0, s10 = 0.0, s20 = 0.0, s01 = 0.0, s11 = 0.0, s02 = 0.0;
            for (int dx = -n; dx <= n; ++dx) {
                const int sx = std::clamp(x + dx, 0, w - 1);
                const double wt = taps[static_cast<std::size_t>(dx + n)];
                const std::size_t j = static_cast<std::size_t>(y) * w + sx;
                s00 += wt * t0[j];
                s10 += wt * dx * t0[j];
                s20 += wt * dx * dx * t0[j];
                s01 += wt * t1[j];
                s11 += wt * dx * t1[j];
                s02 += wt * t2[j];
            }
            // moments ordered like the basis
            const double s[kCoefCount] = {s00, s10, s01, s20, s02, s11};
            double m[kCoefCount];
            for (int i = 0; i < kCoefCount; ++i) {
                double acc = 0.0;
                for (int j = 0; j < kCoefCount; ++j) {
                    acc += ginv[static_cast<std::size_t>(i) * kCoefCount + j] * s[j];
                }
                m[i] = acc;
            }
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            out.c[i] = m[0];
            out.bx[i] = m[1];
            out.by[i] = m[2];
            out.axx[i] = m[3];
            out.ayy[i] = m[4];
            out.axy[i] = 0.5 * m[5];  // fitted xy coefficient is 2*axy
        }
    }
    return out;
}

FlowField fb_displacement(const PolyExpansion& exp1, const PolyExpansion& exp2,
                          const FBParams& params) {
    if (exp1.width != exp2.width || exp1.height != exp2.height) {
        throw std::invalid_argument("fb_displacement: expansion dimensions differ");
    }
    if (params.min_det <= 0.0) {
        throw std::invalid_argument("fb_displacement: min_det must be positive");
    }
    const int w = exp1.width;
    const int h = exp1.height;
    const std::size_t count = exp1.c.size();

    // Normal-equation statistics of the per-pixel constraint A d = -1/2 db:
    // S = A^T A (symmetric), t = A^T db.
    std::vector<double> s11(count), s12(count), s22(count), t1(count), t2(count);
    for (std::size_t i = 0; i < count; ++i) {
        double axx = exp1.axx[i];
        double axy = exp1.axy[i];
        double ayy = exp1.ayy[i];
        if (params.symmetric_a) {
            axx = 0.5 * (axx + exp2.axx[i]);
            axy = 0.5 * (axy + exp2.axy[i]);
            ayy = 0.5 * (ayy + exp2.ayy[i]);
        }
        const double dbx = exp2.bx[i] - exp1.bx[i];
        const double dby = exp2.by[i] - exp1.by[i];
        s11[i] = axx * axx + axy * axy;
        s12[i] = axx * axy + axy * ayy;
        s22[i] = axy * axy + ayy * ayy;
        t1[i] = axx * dbx + axy * dby;
        t2[i] = axy * dbx + ayy * dby;
    }

    const std::vector<double> taps = gaussian_taps(params.avg_radius(), params.avg_sigma());
    gaussian_blur(s11, w, h, taps);
    gaussian_blur(s12, w, h, taps);
    gaussian_blur(s22, w, h, taps);
    gaussian_blur(t1, w, h, taps);
    gaussian_blur(t2, w, h, taps);

    FlowField flow(w, h);
    for (std::size_t i = 0; i < count; ++i) {
        const double det = s11[i] * s22[i] - s12[i] * s12[i];
        if (det < params.min_det) {
            continue;  // degenerate: leave (0,0)
        }
        flow.u[i] = -0.5 * (s22[i] * t1[i] - s12[i] * t2[i]) / det;
        flow.v[i] = -0.5 * (s11[i] * t2[i] - s12[i] * t1[i]) / det;
    }
    return flow;
}

FlowField fb_flow(const Frame& frame_t, const Frame& frame_t1, const FBParams& params) {
    if (!frame_t.same_dims(frame_t1)) {
        throw std::invalid_argument("fb_flow: frame dimensions differ");
    }
    if (params.level_count < 1) {
        throw std::invalid_argument("fb_flow: invalid level_count");
    }

    const ImagePyramid pyr_t = build_pyramid(frame_t, params.level_count);
    const ImagePyramid pyr_t1 = build_pyramid(frame_t1, params.level_count);

    FlowField flow;
    for (int level = params.level_count - 1; level >= 0; --level) {
        const Frame& level_t = pyr_t.levels[static_cast<std::size_t>(level)];
        const Frame& level_t1 = pyr_t1.levels[static_cast<std::size_t>(level)];
        if (level == params.level_count - 1) {
            flow = FlowField(level_t.width, level_t.height);
        } else {
            flow = upsample_flow(flow, level_t.width, level_t.height);
        }

        const Frame warped = warp_frame(level_t1, flow);
        const PolyExpansion e1 = poly_expansion(level_t, params);
        const PolyExpansion e2 = poly_expansion(warped, params);
        const FlowField d = fb_displacement(e1, e2, params);
        for (std::size_t i = 0; i < flow.u.size(); ++i) {
            flow.u[i] += d.u[i];
            flow.v[i] += d.v[i];
        }
    }
    return flow;
}

}  // namespace veintrack
