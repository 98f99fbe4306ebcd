#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include "qf/image.hpp"

namespace qf {

/// Paired visual/thermal face stand-ins: each class owns smooth blob
/// patterns for both modalities; samples add mild amplitude jitter and
/// pixel noise, and test visuals are scaled by a global illumination
/// factor drawn from [illumination_min, illumination_max].
struct SyntheticOptions {
  std::size_t num_classes = 2;
  std::size_t pairs_per_class = 20;
  std::size_t test_per_class = 10;
  std::size_t height = 80;
  std::size_t width = 100;
  double illumination_min = 0.5;
  double illumination_max = 2.0;
  double noise_sigma = 0.01;
  std::uint64_t seed = 7;
};

/// Writes `<root>/class_<c>/{visual,thermal}/sample_<i>.pgm` and
/// `<root>/manifest.csv`; returns the manifest path.
std::filesystem::path write_synthetic_dataset(const std::filesystem::path& root,
                                              const SyntheticOptions& options);

}  // namespace qf
