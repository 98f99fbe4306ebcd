#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qf/eigenspace.hpp"
#include "qf/mlp.hpp"
#include "qf/quotient.hpp"

namespace qf {

struct CropRect {
  std::size_t top = 0;
  std::size_t left = 0;
  std::size_t height = 0;
  std::size_t width = 0;

  friend bool operator==(const CropRect&, const CropRect&) = default;
};

struct PipelineConfig {
  std::optional<CropRect> crop;
  std::size_t height = 80;
  std::size_t width = 100;
  QuotientConfig quotient;
  PcaOptions pca;
  TrainConfig train;
  std::vector<std::size_t> hidden_layers{100};
  FusionVariant fusion = FusionVariant::kNone;

  /// Throws kInvalidArgument for sizes the configured method cannot use.
  void validate() const;

  /// Shape of the quotient feature image fed to PCA.
  std::size_t feature_height() const;
  std::size_t feature_width() const;
};

/// Parses flat `key = value` text. Blank lines and `#` comments are ignored;
/// unknown keys are a kParseError naming the line.
PipelineConfig parse_config(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);

/// Serializes every field; parse_config(to_config_text(c)) reproduces c
/// exactly, including doubles.
std::string to_config_text(const PipelineConfig& config);

/// Applies QF_SEED from the environment, if set.
void apply_env_overrides(PipelineConfig& config);

std::string_view to_string(FusionVariant variant);

}  // namespace qf
