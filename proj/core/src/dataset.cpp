#include "veintrack/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace veintrack {

namespace dataset {

namespace {
std::string numbered(const char* stem, const char* ext, int index) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%05d.%s", stem, index, ext);
    return buf;
}
}  // namespace

std::string frame_name(int index) { return numbered("frame", "pgm", index); }
std::string mask_name(int index) { return numbered("mask", "pgm", index); }
std::string contour_name(int index) { return numbered("contour", "txt", index); }

int count_numbered(const std::filesystem::path& dir, std::string (*name)(int)) {
    if (!std::filesystem::is_directory(dir)) {
        throw std::runtime_error("not a directory: " + dir.string());
    }
    int count = 0;
    while (std::filesystem::exists(dir / name(count))) {
        ++count;
    }
    return count;
}

int count_frames(const std::filesystem::path& dir) {
    const int count = count_numbered(dir, frame_name);
    if (count == 0) {
        throw std::runtime_error("no frames found in " + dir.string());
    }
    return count;
}

}  // namespace dataset

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

PhantomConfig load_phantom_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path.string());
    }

    PhantomConfig cfg;
    ShadowParams shadow;
    bool shadow_seen = false;

    const std::map<std::string, std::function<void(const std::string&)>> setters = {
        {"width", [&](const std::string& v) { cfg.width = std::stoi(v); }},
        {"height", [&](const std::string& v) { cfg.height = std::stoi(v); }},
        {"frame_count", [&](const std::string& v) { cfg.frame_count = std::stoi(v); }},
        {"fps", [&](const std::string& v) { cfg.fps = std::stod(v); }},
        {"center_x", [&](const std::string& v) { cfg.center_x = std::stod(v); }},
        {"center_y", [&](const std::string& v) { cfg.center_y = std::stod(v); }},
        {"semi_axis_a", [&](const std::string& v) { cfg.semi_axis_a = std::stod(v); }},
        {"semi_axis_b", [&](const std::string& v) { cfg.semi_axis_b = std::stod(v); }},
        {"pulsation_amplitude",
         [&](const std::string& v) { cfg.pulsation_amplitude = std::stod(v); }},
        {"pulsation_hz", [&](const std::string& v) { cfg.pulsation_hz = std::stod(v); }},
        {"drift_x", [&](const std::string& v) { cfg.drift_x = std::stod(v); }},
        {"drift_y", [&](const std::string& v) { cfg.drift_y = std::stod(v); }},
        {"interior_level", [&](const std::string& v) { cfg.interior_level = std::stod(v); }},
        {"wall_level", [&](const std::string& v) { cfg.wall_level = std::stod(v); }},
        {"background_level",
         [&](const std::string& v) { cfg.background_level = std::stod(v); }},
        {"wall_thickness", [&](const std::string& v) { cfg.wall_thickness = std::stod(v); }},
        {"speckle_sigma", [&](const std::string& v) { cfg.speckle_sigma = std::stod(v); }},
        {"seed", [&](const std::string& v) { cfg.seed = std::stoull(v); }},
        {"contour_points", [&](const std::string& v) { cfg.contour_points = std::stoi(v); }},
        {"shadow_angle_start",
         [&](const std::string& v) {
             shadow.angle_start = std::stod(v);
             shadow_seen = true;
         }},
        {"shadow_angle_extent",
         [&](const std::string& v) {
             shadow.angle_extent = std::stod(v);
             shadow_seen = true;
         }},
        {"shadow_attenuation",
         [&](const std::string& v) {
             shadow.attenuation = std::stod(v);
             shadow_seen = true;
         }},
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
        }
        try {
            it->second(value);
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": bad value for '" + key + "'");
        }
    }

    if (shadow_seen && shadow.attenuation > 0.0) {
        cfg.shadow = shadow;
    }
    return cfg;
}

void save_phantom_config(const std::filesystem::path& path, const PhantomConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "width = " << cfg.width << "\n"
        << "height = " << cfg.height << "\n"
        << "frame_count = " << cfg.frame_count << "\n"
        << "fps = " << cfg.fps << "\n"
        << "center_x = " << cfg.center_x << "\n"
        << "center_y = " << cfg.center_y << "\n"
        << "semi_axis_a = " << cfg.semi_axis_a << "\n"
        << "semi_axis_b = " << cfg.semi_axis_b << "\n"
        << "pulsation_amplitude = " << cfg.pulsation_amplitude << "\n"
        << "pulsation_hz = " << cfg.pulsation_hz << "\n"
        << "drift_x = " << cfg.drift_x << "\n"
        << "drift_y = " << cfg.drift_y << "\n"
        << "interior_level = " << cfg.interior_level << "\n"
        << "wall_level = " << cfg.wall_level << "\n"
        << "background_level = " << cfg.background_level << "\n"
        << "wall_thickness = " << cfg.wall_thickness << "\n"
        << "speckle_sigma = " << cfg.speckle_sigma << "\n"
        << "seed = " << cfg.seed << "\n"
        << "contour_points = " << cfg.contour_points << "\n";
    if (cfg.shadow) {
        out << "shadow_angle_start = " << cfg.shadow->angle_start << "\n"
            << "shadow_angle_extent = " << cfg.shadow->angle_extent << "\n"
            << "shadow_attenuation = " << cfg.shadow->attenuation << "\n";
    } else {
        out << "shadow_angle_start = 0\n"
            << "shadow_angle_extent = 0\n"
            << "shadow_attenuation = 0\n";
    }

    std::ofstream file(path);
    if (!file) {
        throw std::runtime_error("cannot write config file: " + path.string());
    }
    file << out.str();
    if (!file) {
        throw std::runtime_error("write failed for config file: " + path.string());
    }
}

}  // namespace veintrack
