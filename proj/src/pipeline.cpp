#include "qf/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "qf/error.hpp"
#include "qf/pgm.hpp"
#include "qf/quotient.hpp"

namespace qf {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kPreprocess: return "preprocess";
    case Stage::kQuotient: return "quotient";
    case Stage::kNormalize: return "normalize";
    case Stage::kPca: return "pca";
    case Stage::kProject: return "project";
    case Stage::kMlp: return "mlp";
  }
  return "unknown";
}

namespace {

Image prepare(const std::filesystem::path& path, const PipelineConfig& config) {
  Image img = load_pgm(path);
  if (config.crop) {
    img = crop(img, config.crop->top, config.crop->left, config.crop->height,
               config.crop->width);
  }
  return resize_bilinear(img, config.height, config.width);
}

void notify(const StageObserver& observer, Stage stage) {
  if (observer) observer(stage);
}

}  // namespace

std::pair<Image, Image> preprocess_pair(const ManifestEntry& entry,
                                        const PipelineConfig& config) {
  return {prepare(entry.visual, config), prepare(entry.thermal, config)};
}

Image feature_image(const Image& visual, const Image& thermal,
                    const PipelineConfig& config) {
  return normalize_minmax(quotient_image(visual, thermal, config.quotient, config.fusion));
}

TrainOutput run_train(const Manifest& manifest, const PipelineConfig& config,
                      const StageObserver& observer) {
  config.validate();
  const auto train_entries = manifest.select(Split::kTrain);
  std::set<std::size_t> classes;
  for (const auto& e : train_entries) classes.insert(e.class_id);
  if (train_entries.size() < 2 || classes.size() < 2) {
    throw Error(ErrorCode::kValidation,
                "training needs at least 2 pairs spanning at least 2 classes (got " +
                    std::to_string(train_entries.size()) + " pairs, " +
                    std::to_string(classes.size()) + " classes)");
  }

  notify(observer, Stage::kPreprocess);
  std::vector<std::pair<Image, Image>> pairs;
  pairs.reserve(train_entries.size());
  for (const auto& e : train_entries) pairs.push_back(preprocess_pair(e, config));

  notify(observer, Stage::kQuotient);
  std::vector<Image> quotients;
  quotients.reserve(pairs.size());
  for (const auto& [visual, thermal] : pairs) {
    quotients.push_back(quotient_image(visual, thermal, config.quotient, config.fusion));
  }

  notify(observer, Stage::kNormalize);
  for (Image& q : quotients) q = normalize_minmax(q);

  notify(observer, Stage::kPca);
  TrainOutput out;
  out.models.eigen = fit_pca(quotients, config.pca);

  notify(observer, Stage::kProject);
  const std::size_t num_outputs = *classes.rbegin() + 1;
  std::vector<Sample> samples;
  samples.reserve(quotients.size());
  for (std::size_t i = 0; i < quotients.size(); ++i) {
    samples.push_back(Sample{project(out.models.eigen, quotients[i]),
                             one_hot(train_entries[i].class_id, num_outputs)});
  }

  notify(observer, Stage::kMlp);
  std::vector<std::size_t> sizes{out.models.eigen.k()};
  sizes.insert(sizes.end(), config.hidden_layers.begin(), config.hidden_layers.end());
  sizes.push_back(num_outputs);
  out.models.mlp = init_mlp(sizes, config.train.seed);
  const TrainResult result = train(out.models.mlp, std::move(samples), config.train);

  out.summary.train_pairs = train_entries.size();
  out.summary.num_classes = classes.size();
  out.summary.feature_dim = out.models.eigen.dim();
  out.summary.components = out.models.eigen.k();
  out.summary.epochs = result.epochs;
  out.summary.final_mse = result.final_mse;
  return out;
}

RecognitionReport run_evaluate(const Manifest& manifest, const PipelineConfig& config,
                               const TrainedModels& models) {
  config.validate();
  if (models.eigen.height != config.feature_height() ||
      models.eigen.width != config.feature_width()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "model expects " + std::to_string(models.eigen.height) + "x" +
                    std::to_string(models.eigen.width) + " features, pipeline produces " +
                    std::to_string(config.feature_height()) + "x" +
                    std::to_string(config.feature_width()));
  }
  if (models.mlp.input_size() != models.eigen.k()) {
    throw Error(ErrorCode::kDimensionMismatch, "MLP input size differs from PCA components");
  }
  const auto test_entries = manifest.select(Split::kTest);
  if (test_entries.empty()) {
    throw Error(ErrorCode::kValidation, "manifest has no test entries");
  }
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& e : test_entries) {
    const auto [visual, thermal] = preprocess_pair(e, config);
    const auto features = project(models.eigen, feature_image(visual, thermal, config));
    auto& [tested, recognized] = counts[e.class_id];
    ++tested;
    if (predict(models.mlp, features) == e.class_id) ++recognized;
  }
  RecognitionReport report = make_report(counts);
  report.class_names = manifest.class_names;
  return report;
}

}  // namespace qf
