#pragma once

#include <filesystem>
#include <string>

#include "veintrack/phantom.hpp"

namespace veintrack {

/// On-disk clip layout: frame_00000.pgm .. frame_NNNNN.pgm numbered
/// contiguously from 0, an optional truth/ directory of mask PGMs, and an
/// optional contours/ directory of contour files.
namespace dataset {

std::string frame_name(int index);
std::string mask_name(int index);
std::string contour_name(int index);

inline std::filesystem::path truth_dir(const std::filesystem::path& dir) { return dir / "truth"; }
inline std::filesystem::path contours_dir(const std::filesystem::path& dir) {
    return dir / "contours";
}

/// Number of contiguously numbered frame files starting at 0. Throws when the
/// directory is missing or holds no frames.
int count_frames(const std::filesystem::path& dir);

/// Count of files matching the given printf-style numbering inside dir.
int count_numbered(const std::filesystem::path& dir, std::string (*name)(int));

}  // namespace dataset

/// Flat key=value phantom description ('#' starts a comment). Unknown keys
/// are rejected. A positive shadow_attenuation enables the shadow wedge.
PhantomConfig load_phantom_config(const std::filesystem::path& path);
void save_phantom_config(const std::filesystem::path& path, const PhantomConfig& config);

}  // namespace veintrack
