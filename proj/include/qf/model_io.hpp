#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "qf/config.hpp"
#include "qf/eigenspace.hpp"
#include "qf/mlp.hpp"

namespace qf {

struct TrainedModels {
  EigenModel eigen;
  MlpModel mlp;
};

struct StoredModel {
  PipelineConfig config;
  TrainedModels models;
};

inline constexpr std::uint8_t kModelFormatVersion = 1;

/// Binary `.qf` layout, all integers and reals little-endian:
///
///   magic "QFMODEL\x1A" (8 bytes), version (1 byte)
///   u32 length + config text (key=value echo of PipelineConfig)
///   eigen block:  u64 height, u64 width, u64 k,
///                 f64 mean[d], f64 eigenvalues[k], f64 basis[d*k] (column by column)
///   mlp block:    u64 layer count, u64 sizes[...],
///                 per layer f64 weights[fan_out*fan_in] (row-major), f64 biases[fan_out]
///   u32 CRC-32 of every preceding byte
///
/// Momentum velocities are not stored; a loaded MLP starts with zero
/// velocity.
std::vector<std::uint8_t> serialize_model(const TrainedModels& models,
                                          const PipelineConfig& config);
StoredModel deserialize_model(std::span<const std::uint8_t> bytes);

void save_model(const TrainedModels& models, const PipelineConfig& config,
                const std::filesystem::path& path);
StoredModel load_model(const std::filesystem::path& path);

}  // namespace qf
