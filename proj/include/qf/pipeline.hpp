#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

#include "qf/config.hpp"
#include "qf/manifest.hpp"
#include "qf/model_io.hpp"
#include "qf/report.hpp"

namespace qf {

enum class Stage { kPreprocess, kQuotient, kNormalize, kPca, kProject, kMlp };

std::string_view to_string(Stage stage);

/// Called once per stage transition, in execution order. Optional.
using StageObserver = std::function<void(Stage)>;

struct TrainingSummary {
  std::size_t train_pairs = 0;
  std::size_t num_classes = 0;
  std::size_t feature_dim = 0;
  std::size_t components = 0;
  int epochs = 0;
  double final_mse = 0.0;
};

struct TrainOutput {
  TrainedModels models;
  TrainingSummary summary;
};

/// Loads one visual/thermal pair and applies crop and resize.
std::pair<Image, Image> preprocess_pair(const ManifestEntry& entry,
                                        const PipelineConfig& config);

/// Quotient image for a preprocessed pair, min-max normalized.
Image feature_image(const Image& visual, const Image& thermal,
                    const PipelineConfig& config);

/// preprocess -> quotient -> normalize for every training pair, then PCA,
/// projection and MLP training. The MLP has one output per class id in
/// [0, max class id].
TrainOutput run_train(const Manifest& manifest, const PipelineConfig& config,
                      const StageObserver& observer = {});

RecognitionReport run_evaluate(const Manifest& manifest, const PipelineConfig& config,
                               const TrainedModels& models);

}  // namespace qf
