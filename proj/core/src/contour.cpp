#include "veintrack/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace veintrack {

double contour_area(const Contour& contour) {
    const auto& pts = contour.points;
    const std::size_t n = pts.size();
    if (n < 3) {
        return 0.0;
    }
    double twice_area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = pts[i];
        const Vec2& q = pts[(i + 1) % n];
        twice_area += p.x * q.y - q.x * p.y;
    }
    return 0.5 * std::abs(twice_area);
}

Mask contour_to_mask(const Contour& contour, int width, int height) {
    if (contour.point_count() < 3) {
        throw std::invalid_argument("contour_to_mask: contour needs at least 3 points");
    }
    Mask mask(width, height);
    const auto& pts = contour.points;
    const std::size_t n = pts.size();

    std::vector<double> crossings;
    for (int y = 0; y < height; ++y) {
        const double sy = y;
        crossings.clear();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2& p = pts[i];
            const Vec2& q = pts[(i + 1) % n];
            // half-open span in y so shared vertices count once
            if ((p.y <= sy && q.y > sy) || (q.y <= sy && p.y > sy)) {
                const double t = (sy - p.y) / (q.y - p.y);
                crossings.push_back(p.x + t * (q.x - p.x));
            }
        }
        std::sort(crossings.begin(), crossings.end());
        for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
            // pixel centers in [xa, xb)
            int x_begin = static_cast<int>(std::ceil(crossings[k]));
            int x_end = static_cast<int>(std::ceil(crossings[k + 1])) - 1;
            x_begin = std::max(x_begin, 0);
            x_end = std::min(x_end, width - 1);
            for (int x = x_begin; x <= x_end; ++x) {
                mask.set(x, y, true);
            }
        }
    }
    return mask;
}

Contour ellipse_contour(double cx, double cy, double a, double b, int n, int frame_index) {
    if (n < 3) {
        throw std::invalid_argument("ellipse_contour: need at least 3 points");
    }
    Contour contour;
    contour.frame_index = frame_index;
    contour.points.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n;
        contour.points.push_back({cx + a * std::cos(theta), cy + b * std::sin(theta)});
    }
    return contour;
}

Contour read_contour_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open contour file: " + path.string());
    }
    std::string header;
    std::getline(in, header);
    int count = 0;
    int frame = 0;
    if (std::sscanf(header.c_str(), "N=%d frame=%d", &count, &frame) != 2 || count < 3) {
        throw std::runtime_error("malformed contour header in " + path.string());
    }
    Contour contour;
    contour.frame_index = frame;
    contour.points.reserve(static_cast<std::size_t>(count));
    std::string line;
    while (static_cast<int>(contour.points.size()) < count && std::getline(in, line)) {
        if (line.empty()) continue;
        double x = 0.0, y = 0.0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &x, &y) != 2) {
            throw std::runtime_error("malformed contour point in " + path.string());
        }
        contour.points.push_back({x, y});
    }
    if (contour.point_count() != count) {
        throw std::runtime_error("contour file " + path.string() + " ended early");
    }
    return contour;
}

void write_contour_file(const std::filesystem::path& path, const Contour& contour) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write contour file: " + path.string());
    }
    out << "N=" << contour.point_count() << " frame=" << contour.frame_index << "\n";
    char buf[80];
    for (const Vec2& p : contour.points) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", p.x, p.y);
        out << buf;
    }
    if (!out) {
        throw std::runtime_error("write failed for contour file: " + path.string());
    }
}

}  // namespace veintrack
