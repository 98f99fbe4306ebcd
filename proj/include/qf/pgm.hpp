#pragma once

#include <filesystem>

#include "qf/image.hpp"

namespace qf {

/// Reads a grayscale Netpbm file (P2 or P5, maxval <= 65535). Intensities
/// are divided by maxval so the result lies in [0,1].
///
/// Failure modes are reported with distinct codes: kFileNotFound,
/// kMalformedHeader, kTruncatedData, and kUnsupportedFormat for PPM/PBM.
Image load_pgm(const std::filesystem::path& path);

/// Writes a binary P5 file. Pixels are clamped to [0,1] and quantized as
/// round(p * maxval); maxval must be 255 or 65535.
void save_pgm(const Image& image, const std::filesystem::path& path,
              int maxval = 255);

}  // namespace qf
