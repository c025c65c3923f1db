#pragma once

#include <filesystem>

#include "veintrack/image.hpp"
#include "veintrack/metrics.hpp"

namespace veintrack {

/// Binary (P5) 8-bit portable graymap. Intensities are normalized to [0,1]
/// on read (byte / 255) and quantized back on write.
Frame read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Frame& frame);

/// Masks stored as P5 graymaps with values {0,255}; any nonzero byte reads
/// back as set.
Mask read_mask_pgm(const std::filesystem::path& path);
void write_mask_pgm(const std::filesystem::path& path, const Mask& mask);

}  // namespace veintrack
